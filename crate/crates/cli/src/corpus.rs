//! The bundled example corpus.
//!
//! `example:NAME` resolves to `NAME.toml`, read from the directory in
//! `NOVIKOV_EXAMPLES_DIR` when that is set and from the copy compiled into
//! the binary otherwise.

use std::path::Path;

use crate::CliError;

pub const ENV_VAR: &str = "NOVIKOV_EXAMPLES_DIR";
pub const PREFIX: &str = "example:";

pub const BUNDLED: &[(&str, &str)] = &[
    ("circle_degree1", include_str!("../corpus/circle_degree1.toml")),
    ("sphere_height", include_str!("../corpus/sphere_height.toml")),
    ("torsion_demo", include_str!("../corpus/torsion_demo.toml")),
    ("two_variable_demo", include_str!("../corpus/two_variable_demo.toml")),
    ("torsion_demo.chains", include_str!("../corpus/torsion_demo.chains.toml")),
    ("circle_degree1.chains", include_str!("../corpus/circle_degree1.chains.toml")),
    ("laurent_circle", include_str!("../corpus/laurent_circle.toml")),
    ("geometric", include_str!("../corpus/geometric.toml")),
    ("skew_cone", include_str!("../corpus/skew_cone.toml")),
];

/// The four Morse examples.
pub const MORSE_EXAMPLES: &[&str] = &["circle_degree1", "sphere_height", "torsion_demo", "two_variable_demo"];

pub fn bundled(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// Resolves an input argument to `(origin, text)`.
pub fn read(arg: &str) -> Result<(String, String), CliError> {
    if let Some(name) = arg.strip_prefix(PREFIX) {
        if let Some(dir) = std::env::var_os(ENV_VAR) {
            let path = Path::new(&dir).join(format!("{name}.toml"));
            return read_file(&path.to_string_lossy());
        }
        return bundled(name)
            .map(|t| (arg.to_string(), t.to_string()))
            .ok_or_else(|| CliError::Usage(format!("no bundled example named `{name}`")));
    }
    read_file(arg)
}

fn read_file(path: &str) -> Result<(String, String), CliError> {
    std::fs::read_to_string(path)
        .map(|t| (path.to_string(), t))
        .map_err(|e| CliError::Io {
            origin: path.to_string(),
            message: e.to_string(),
        })
}
