#![no_main]

use std::sync::Arc;

use libfuzzer_sys::fuzz_target;
use novikov_cli::input::{load, ChainsFile, CHAINS_SCHEMA};
use novikov_core::{CoeffDomain, DegreeForm};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(file) = load::<ChainsFile>("fuzz", text, CHAINS_SCHEMA) else {
        return;
    };
    let form = Arc::new(DegreeForm::cyclic());
    let _ = file.to_chains("fuzz", &form, CoeffDomain::Integers);
});
