#![no_main]

use libfuzzer_sys::fuzz_target;
use novikov_cli::input::{load, ComplexFile, COMPLEX_SCHEMA};
use novikov_core::CoeffDomain;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(file) = load::<ComplexFile>("fuzz", text, COMPLEX_SCHEMA) else {
        return;
    };
    for domain in [CoeffDomain::Integers, CoeffDomain::Rationals] {
        let _ = file.to_complex("fuzz", domain);
    }
});
