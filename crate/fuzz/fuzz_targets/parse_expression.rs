#![no_main]

use std::sync::Arc;

use libfuzzer_sys::fuzz_target;
use novikov_core::syntax::{parse_expression, EvalContext};
use novikov_core::{CoeffDomain, DegreeForm};

fuzz_target!(|data: &[u8]| {
    // Long inputs only slow the search down.
    if data.len() > 256 {
        return;
    }
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let form = Arc::new(DegreeForm::cyclic());
    for domain in [CoeffDomain::Integers, CoeffDomain::Rationals] {
        let ctx = EvalContext {
            domain,
            precision: Some(form.integer_degree(6)),
        };
        let _ = parse_expression(text, &form, &ctx);
    }
});
