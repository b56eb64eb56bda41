//! Morse-Novikov complexes from combinatorial flow-line data.
//!
//! Each critical point doubles as its chosen lift `x_0` in the covering; a
//! flow line from `x_0` to `t^n y_0` carries the deck label `n`. Boundary
//! coefficients count such lines with the sign rule of [`flow_line_sign`].

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_rational::BigRational;

use crate::degree::{Cutoff, DegreeForm, LatticePoint};
use crate::error::{Error, Result};
use crate::homology::{verify_complex, FreeComplex, Matrix, VerificationReport};
use crate::series::{CoeffDomain, Series};

mod duality;
pub mod examples;

pub use duality::{
    adjoint_boundary, coefficient_of, cycle_basis, is_cycle, lambda_pairing, linking_number,
    linking_number_from, pairs_trivially, reduce_mod_one, solve_in_complex, u_differential,
    ChainKind, LambdaChain, TorsionCertificate,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPoint {
    pub id: String,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowLineRecord {
    pub from: String,
    pub to: String,
    /// The line runs from the lift of `from` to `t^deck` times the lift of `to`.
    pub deck: LatticePoint,
    /// Whether the line's orientation agrees with that of `U_to ∩ S_from`.
    pub orientation_agrees: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MorseData {
    pub dimension: usize,
    pub form: Arc<DegreeForm>,
    pub points: Vec<CriticalPoint>,
    pub records: Vec<FlowLineRecord>,
    /// The record list is complete below this degree.
    pub window: Cutoff,
}

/// `+1` iff the orientations agree and `#x` is even, or disagree and `#x`
/// is odd.
pub fn flow_line_sign(orientation_agrees: bool, index_x: usize) -> i64 {
    if orientation_agrees == index_x.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `Σ ±t^deck` over the given records of one pair `(x, y)`, known through
/// `window`.
pub fn boundary_coefficient<'a>(
    form: &Arc<DegreeForm>,
    index_x: usize,
    records: impl IntoIterator<Item = &'a FlowLineRecord>,
    window: &Cutoff,
) -> Result<Series> {
    let terms = records.into_iter().map(|r| {
        let sign = flow_line_sign(r.orientation_agrees, index_x);
        (r.deck.clone(), BigRational::from_integer(sign.into()))
    });
    Series::from_terms(form, CoeffDomain::Integers, terms, window.clone())
}

impl MorseData {
    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.points
            .iter()
            .find(|p| p.id == id)
            .map(|p| p.index)
            .ok_or_else(|| Error::UnknownPoint(id.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for p in &self.points {
            if !seen.insert(p.id.as_str()) {
                return Err(Error::InvalidData(format!("duplicate critical point `{}`", p.id)));
            }
            if p.index > self.dimension {
                return Err(Error::IndexMismatch(format!(
                    "`{}` has index {} above the dimension {}",
                    p.id, p.index, self.dimension
                )));
            }
        }
        if let Cutoff::Finite(w) = &self.window {
            if w.coords().len() != self.form.dim() {
                return Err(Error::DimensionMismatch {
                    expected: self.form.dim(),
                    found: w.coords().len(),
                });
            }
        }
        for r in &self.records {
            let (i, j) = (self.index_of(&r.from)?, self.index_of(&r.to)?);
            if j != i + 1 {
                return Err(Error::IndexMismatch(format!(
                    "flow line {} -> {} joins indices {i} and {j}; they must differ by one",
                    r.from, r.to
                )));
            }
            self.form.check_point(&r.deck)?;
        }
        Ok(())
    }

    /// Point ids grouped by index, in declaration order.
    pub fn generators(&self) -> Vec<Vec<String>> {
        let mut g = vec![Vec::new(); self.dimension + 1];
        for p in &self.points {
            g[p.index].push(p.id.clone());
        }
        g
    }
}

/// An assembled complex with its `δ² = 0` report.
#[derive(Clone, Debug)]
pub struct NovikovComplex {
    pub complex: FreeComplex,
    pub verification: VerificationReport,
}

/// Builds the Novikov complex: one generator per critical point, degree equal
/// to the index, and `dS_x = Σ n_x^y S_y`. The composite of consecutive
/// boundaries is checked through the window.
pub fn assemble_novikov_complex(data: &MorseData) -> Result<NovikovComplex> {
    data.validate()?;
    let form = &data.form;
    let generators = data.generators();
    let mut grouped: BTreeMap<(&str, &str), Vec<&FlowLineRecord>> = BTreeMap::new();
    for r in &data.records {
        grouped.entry((&r.from, &r.to)).or_default().push(r);
    }
    let mut boundaries = Vec::new();
    for k in 0..data.dimension {
        let (src, dst) = (&generators[k], &generators[k + 1]);
        let mut m = Matrix::zeros(form, CoeffDomain::Integers, dst.len(), src.len());
        for (j, x) in src.iter().enumerate() {
            for (i, y) in dst.iter().enumerate() {
                let recs = grouped.get(&(x.as_str(), y.as_str())).map_or(&[][..], Vec::as_slice);
                if recs.is_empty() && data.window.is_infinite() {
                    continue;
                }
                m.set(i, j, boundary_coefficient(form, k, recs.iter().copied(), &data.window)?);
            }
        }
        boundaries.push(m);
    }
    let complex = FreeComplex::new(form, generators, boundaries)?;
    let precision = match &data.window {
        Cutoff::Finite(w) => w.clone(),
        Cutoff::Infinite => form.zero_degree(),
    };
    let verification = verify_complex(&complex, &precision)?;
    Ok(NovikovComplex {
        complex,
        verification,
    })
}
