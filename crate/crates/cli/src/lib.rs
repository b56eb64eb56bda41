//! Batch front end for the `novikov-core` engine.
//!
//! Each invocation runs one job: evaluate a ring expression, compute the
//! Novikov homology of a complex, pair chains, inspect a cone, or print the
//! Smith normal forms of the boundary maps. Inputs are versioned TOML files;
//! see `docs/FORMATS.md` in the repository.

use std::fmt;

use clap::{Parser, Subcommand, ValueEnum};

pub mod commands;
pub mod corpus;
pub mod input;
pub mod report;

use novikov_core::CoeffDomain;

/// Everything that can go wrong in a job.
#[derive(Debug)]
pub enum CliError {
    Io {
        origin: String,
        message: String,
    },
    /// Malformed TOML.
    Syntax {
        origin: String,
        message: String,
        location: Option<(usize, usize)>,
    },
    /// A field that does not match the schema.
    Schema {
        origin: String,
        field: String,
        message: String,
        location: Option<(usize, usize)>,
    },
    /// An engine error raised while interpreting a field.
    Field {
        origin: String,
        field: String,
        source: Box<novikov_core::Error>,
    },
    Core(Box<novikov_core::Error>),
    Usage(String),
}

impl CliError {
    pub fn field(origin: &str, field: &str, message: impl Into<String>) -> CliError {
        CliError::Schema {
            origin: origin.to_string(),
            field: field.to_string(),
            message: message.into(),
            location: None,
        }
    }

    pub fn at(origin: &str, field: &str, source: novikov_core::Error) -> CliError {
        CliError::Field {
            origin: origin.to_string(),
            field: field.to_string(),
            source: Box::new(source),
        }
    }
}

fn write_loc(f: &mut fmt::Formatter<'_>, location: &Option<(usize, usize)>) -> fmt::Result {
    match location {
        Some((l, c)) => write!(f, " (line {l}, column {c})"),
        None => Ok(()),
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io { origin, message } => write!(f, "{origin}: {message}"),
            CliError::Syntax {
                origin,
                message,
                location,
            } => {
                write!(f, "{origin}")?;
                write_loc(f, location)?;
                write!(f, ": {message}")
            }
            CliError::Schema {
                origin,
                field,
                message,
                location,
            } => {
                write!(f, "{origin}: field `{field}`")?;
                write_loc(f, location)?;
                write!(f, ": {message}")
            }
            CliError::Field { origin, field, source } if field.is_empty() => {
                write!(f, "{origin}: {source}")
            }
            CliError::Field { origin, field, source } => {
                write!(f, "{origin}: field `{field}`: {source}")
            }
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<novikov_core::Error> for CliError {
    fn from(e: novikov_core::Error) -> Self {
        CliError::Core(Box::new(e))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Coeffs {
    /// Integer coefficients, `Λ_Z`.
    #[default]
    Int,
    /// Rational coefficients, a field.
    Rat,
}

impl Coeffs {
    pub fn domain(self) -> CoeffDomain {
        match self {
            Coeffs::Int => CoeffDomain::Integers,
            Coeffs::Rat => CoeffDomain::Rationals,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Aligned human-readable text.
    #[default]
    Table,
    /// JSON.
    Structured,
}

/// One batch job.
#[derive(Clone, Debug, Parser)]
#[command(name = "novikov", version, about = "Novikov ring arithmetic and Morse-Novikov complexes")]
pub struct JobSpec {
    /// Working precision: a positive degree such as `10`, `7/2` or `3 + xi`.
    /// Defaults to the data's completeness window, or 10.
    #[arg(long, global = true)]
    pub precision: Option<String>,

    #[arg(long, global = true, value_enum, default_value_t = Coeffs::Int)]
    pub coeffs: Coeffs,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

/// Inputs are file paths, or `example:NAME` for the bundled corpus.
#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Evaluate a ring expression (literals, +, -, *, /, ^, inv, div).
    Ring {
        /// A `novikov-ring/1` file.
        input: Option<String>,
        /// Inline expression; overrides the file's `expr`.
        #[arg(long)]
        expr: Option<String>,
    },
    /// Novikov homology, inequality slacks and the `δ² = 0` check.
    Homology {
        /// A `novikov-morse/1` or `novikov-complex/1` file.
        input: String,
    },
    /// The Λ-pairing of an unstable and a stable chain.
    Pairing {
        /// A `novikov-morse/1` or `novikov-complex/1` file.
        input: String,
        /// A `novikov-chains/1` file.
        chains: String,
        /// Print the linking number of the two torsion classes instead.
        #[arg(long)]
        linking: bool,
    },
    /// Cone membership, fundamental lattice points and conical certificates.
    Cone {
        /// A `novikov-ring/1` file with a `[cone]` table.
        input: String,
    },
    /// Smith normal forms of the boundary maps.
    Snf {
        input: String,
    },
    /// Read the boundary maps over `Z[t^±1]`, extend to the Novikov ring,
    /// and compute homology.
    Extend {
        input: String,
    },
    /// List the bundled examples, or print one.
    Examples {
        name: Option<String>,
    },
}

/// What a job printed and how it ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Exit code for a complex that fails `δ² = 0`.
pub const EXIT_NOT_A_COMPLEX: i32 = 2;

pub fn run(job: &JobSpec) -> Outcome {
    match commands::execute(job) {
        Ok((report, ok)) => Outcome {
            stdout: match job.format {
                Format::Table => report.table(),
                Format::Structured => report.json(),
            },
            stderr: String::new(),
            code: if ok { 0 } else { EXIT_NOT_A_COMPLEX },
        },
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: 1,
        },
    }
}
