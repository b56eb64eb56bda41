//! Novikov rings and Morse-Novikov complexes.
//!
//! The crate is layered bottom-up:
//!
//! * [`degree`]: period forms `χ: Z^q → R` with certified ordering.
//! * [`series`]: truncated elements of `Λ_Z` and `Λ_Q`.
//! * [`syntax`]: text rendering and parsing of series and degrees.
//! * [`cone`]: lattice cones and conical-support certificates.
//! * [`homology`]: free complexes, Smith normal form, Novikov numbers.
//! * [`morse`]: flow-line data, complex assembly and the `Λ`-pairing.

pub mod cone;
pub mod degree;
pub mod error;
pub mod homology;
pub mod laurent;
mod linalg;
pub mod morse;
pub mod series;
pub mod syntax;

pub use degree::{Cutoff, DegreeForm, DegreeValue, FormalRealBasis, LatticePoint};
pub use error::{Error, Result};
pub use series::{CoeffDomain, LeadingData, Series};
