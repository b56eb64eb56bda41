#![no_main]

use libfuzzer_sys::fuzz_target;
use novikov_cli::input::{load, RingFile, RING_SCHEMA};
use novikov_core::syntax::{parse_expression, EvalContext};
use novikov_core::CoeffDomain;

fuzz_target!(|data: &[u8]| {
    if data.len() > 512 {
        return;
    }
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(file) = load::<RingFile>("fuzz", text, RING_SCHEMA) else {
        return;
    };
    let Ok(form) = file.form("fuzz") else {
        return;
    };
    if let Ok(Some((cone, points))) = file.cone("fuzz", &form) {
        for p in &points {
            let _ = cone.contains(p);
        }
    }
    if let Some(expr) = &file.expr {
        let ctx = EvalContext {
            domain: CoeffDomain::Integers,
            precision: Some(form.integer_degree(6)),
        };
        let _ = parse_expression(expr, &form, &ctx);
    }
});
