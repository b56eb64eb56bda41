//! The bundled example corpus.

use std::sync::Arc;

use crate::degree::{Cutoff, DegreeForm, LatticePoint};

use super::{CriticalPoint, FlowLineRecord, MorseData};

fn point(id: &str, index: usize) -> CriticalPoint {
    CriticalPoint {
        id: id.into(),
        index,
    }
}

fn line(from: &str, to: &str, deck: &[i64], agrees: bool) -> FlowLineRecord {
    FlowLineRecord {
        from: from.into(),
        to: to.into(),
        deck: LatticePoint::new(deck.to_vec()),
        orientation_agrees: agrees,
    }
}

/// A degree-one circle-valued function on `S¹`: `∂⁰ = [1 − t]`.
pub fn circle_degree1() -> MorseData {
    MorseData {
        dimension: 1,
        form: Arc::new(DegreeForm::cyclic()),
        points: vec![point("a", 0), point("b", 1)],
        records: vec![line("a", "b", &[0], true), line("a", "b", &[1], false)],
        window: Cutoff::Infinite,
    }
}

/// The height function on `S²`, with `Λ = Z`.
pub fn sphere_height() -> MorseData {
    MorseData {
        dimension: 2,
        form: Arc::new(DegreeForm::trivial()),
        points: vec![point("south", 0), point("north", 2)],
        records: vec![],
        window: Cutoff::Infinite,
    }
}

/// Two parallel lines of the same sign: `∂⁰ = [2]`.
pub fn torsion_demo() -> MorseData {
    MorseData {
        dimension: 1,
        form: Arc::new(DegreeForm::cyclic()),
        points: vec![point("a", 0), point("b", 1)],
        records: vec![line("a", "b", &[0], true), line("a", "b", &[0], true)],
        window: Cutoff::Infinite,
    }
}

/// A Morse form on `T²` with periods `(1, sqrt 2)`: one minimum, two
/// saddles, one maximum.
pub fn two_variable_demo() -> MorseData {
    MorseData {
        dimension: 2,
        form: Arc::new(DegreeForm::with_sqrt("xi", 2).expect("sqrt 2 form")),
        points: vec![point("a", 0), point("b1", 1), point("b2", 1), point("c", 2)],
        records: vec![
            line("a", "b1", &[0, 0], true),
            line("a", "b1", &[1, 0], false),
            line("a", "b2", &[0, 0], true),
            line("a", "b2", &[0, 1], false),
            line("b1", "c", &[0, 0], true),
            line("b1", "c", &[0, 1], false),
            line("b2", "c", &[0, 0], false),
            line("b2", "c", &[1, 0], true),
        ],
        window: Cutoff::Infinite,
    }
}

/// Every bundled example by name.
pub fn all() -> Vec<(&'static str, MorseData)> {
    vec![
        ("circle_degree1", circle_degree1()),
        ("sphere_height", sphere_height()),
        ("torsion_demo", torsion_demo()),
        ("two_variable_demo", two_variable_demo()),
    ]
}
