#![no_main]

use std::sync::Arc;

use libfuzzer_sys::fuzz_target;
use novikov_core::syntax::parse_series;
use novikov_core::{CoeffDomain, DegreeForm};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let forms = [
        Arc::new(DegreeForm::cyclic()),
        Arc::new(DegreeForm::with_sqrt("xi", 2).unwrap()),
    ];
    for form in &forms {
        for domain in [CoeffDomain::Integers, CoeffDomain::Rationals] {
            if let Ok(s) = parse_series(text, form, domain) {
                let again = parse_series(&s.to_string(), form, domain).expect("rendered series parses");
                assert_eq!(s, again, "round trip of {text:?}");
            }
        }
    }
});
