#![no_main]

use libfuzzer_sys::fuzz_target;
use novikov_cli::input::{load, MorseFile, MORSE_SCHEMA};
use novikov_core::homology::{check_inequalities, homology};
use novikov_core::morse::assemble_novikov_complex;
use novikov_core::Cutoff;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(file) = load::<MorseFile>("fuzz", text, MORSE_SCHEMA) else {
        return;
    };
    let Ok(morse) = file.to_data("fuzz") else {
        return;
    };
    let rendered = MorseFile::describe(file.name.as_deref(), &morse).render();
    let back = load::<MorseFile>("fuzz", &rendered, MORSE_SCHEMA).expect("rendered file loads");
    assert_eq!(back.to_data("fuzz").expect("rendered file is valid"), morse);

    if morse.points.len() > 8 || morse.records.len() > 64 {
        return;
    }
    let Ok(nc) = assemble_novikov_complex(&morse) else {
        return;
    };
    if !nc.verification.passed() {
        return;
    }
    let precision = match &morse.window {
        Cutoff::Finite(w) => w.clone(),
        Cutoff::Infinite => morse.form.integer_degree(6),
    };
    if let Ok(h) = homology(&nc.complex, &precision) {
        assert!(check_inequalities(&h).holds(), "inequalities fail on a valid complex");
    }
});
