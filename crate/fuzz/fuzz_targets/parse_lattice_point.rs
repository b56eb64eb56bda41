#![no_main]

use libfuzzer_sys::fuzz_target;
use novikov_core::syntax::parse_lattice_point;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(p) = parse_lattice_point(text) {
        assert_eq!(parse_lattice_point(&p.to_string()).expect("rendered point parses"), p);
    }
});
