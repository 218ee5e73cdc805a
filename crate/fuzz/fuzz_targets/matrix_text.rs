#![no_main]

use libfuzzer_sys::fuzz_target;
use tridiag::{F2Matrix, F4Matrix};

fuzz_target!(|text: &str| {
    if let Ok(m) = F4Matrix::parse_text(text) {
        assert_eq!(F4Matrix::parse_text(&m.to_text()).unwrap(), m);
        if m.is_square() && m.rows() <= 8 {
            if let Ok(inv) = m.invert() {
                assert_eq!(m.matmul(&inv).unwrap(), F4Matrix::identity(m.rows()));
            }
        }
    }
    if let Ok(m) = F2Matrix::parse_text(text) {
        assert_eq!(F2Matrix::parse_text(&m.to_text()).unwrap(), m);
        assert_eq!(m.to_f4().to_f2().unwrap(), m);
    }
});
