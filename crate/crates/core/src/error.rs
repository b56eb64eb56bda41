use thiserror::Error;

use crate::degree::LatticePoint;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// Every declared refinement of the basis enclosures still straddles zero.
    #[error("ordering undecidable: sign of {value} is not resolved by the declared enclosures")]
    OrderingUndecidable { value: String },

    #[error("invalid formal basis: {0}")]
    InvalidBasis(String),

    #[error("invalid degree form: {0}")]
    InvalidForm(String),

    #[error("operands live over different degree forms")]
    AmbientMismatch,

    #[error("coefficient {0} is not an integer")]
    NonIntegral(String),

    /// No stored terms but a finite cutoff: the valuation cannot be located.
    #[error("zero up to precision O(deg {cutoff}): valuation unknown, raise the precision")]
    ZeroAmbiguity { cutoff: String },

    #[error("series is exactly zero")]
    ExactZero,

    #[error("not a unit: leading coefficient {leading}")]
    NotAUnit { leading: String },

    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error(
        "not divisible at step {step}: leading coefficient {coefficient} of t^{exponent} \
         is not a multiple of {divisor}"
    )]
    NotDivisible {
        step: usize,
        coefficient: String,
        exponent: LatticePoint,
        divisor: String,
    },

    #[error("support is not conical: {witness} lies outside {shift} + C(e) for every tested shift")]
    NotConical {
        witness: LatticePoint,
        shift: LatticePoint,
    },

    #[error("invalid cone: {0}")]
    InvalidCone(String),

    /// Matrix-level counterpart of `ZeroAmbiguity`.
    #[error("ambiguous zero at entry ({row}, {col}): no terms below O(deg {cutoff})")]
    AmbiguousZero {
        row: usize,
        col: usize,
        cutoff: String,
    },

    /// A composite of consecutive boundaries has a term below the precision.
    #[error("not a complex: entry ({row}, {col}) of the composite starting in degree {degree} has term {term}")]
    NotAComplex {
        degree: usize,
        row: usize,
        col: usize,
        term: String,
    },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("index mismatch: {0}")]
    IndexMismatch(String),

    #[error("unknown critical point `{0}`")]
    UnknownPoint(String),

    #[error("invalid Morse data: {0}")]
    InvalidData(String),

    #[error(
        "degree mismatch: unstable chain of degree {unstable} and stable chain of degree \
         {stable} must sum to {expected}"
    )]
    DegreeMismatch {
        unstable: usize,
        stable: usize,
        expected: usize,
    },

    #[error("class is not torsion: {0}")]
    NotTorsion(String),

    #[error("no solution: {0}")]
    NoSolution(String),

    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("at {line}:{column}: {source}")]
    Located {
        line: usize,
        column: usize,
        source: Box<Error>,
    },
}
