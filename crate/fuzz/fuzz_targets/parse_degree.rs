#![no_main]

use libfuzzer_sys::fuzz_target;
use novikov_core::syntax::parse_degree;
use novikov_core::FormalRealBasis;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let mut basis = FormalRealBasis::rational();
    basis.push_sqrt("xi", 2).unwrap();
    if let Ok(d) = parse_degree(text, &basis) {
        let again = parse_degree(&basis.render(&d), &basis).expect("rendered degree parses");
        assert_eq!(d, again);
    }
});
