#![no_main]

use libfuzzer_sys::fuzz_target;
use tridiag::AdditiveCode;

fuzz_target!(|text: &str| {
    let Ok(code) = AdditiveCode::parse_text(text) else { return };
    let again = AdditiveCode::parse_text(&code.to_text()).unwrap();
    assert_eq!(again.f2_rank(), code.f2_rank());
    if code.len() <= 8 && code.f2_rank() <= 12 {
        let wd = code.weight_distribution().unwrap();
        assert_eq!(wd.total(), 1u64 << code.f2_rank());
        assert_eq!(code.min_distance().ok(), wd.min_nonzero_weight());
        let dual = code.hermitian_dual().unwrap();
        assert_eq!(dual.f2_rank() + code.f2_rank(), 2 * code.len());
    }
});
