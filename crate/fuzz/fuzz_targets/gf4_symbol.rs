#![no_main]

use libfuzzer_sys::fuzz_target;
use tridiag::{F2, F4};

fuzz_target!(|text: &str| {
    if let Ok(x) = F4::parse_symbol(text) {
        assert_eq!(F4::parse_symbol(&x.to_string()).unwrap(), x);
        assert_eq!(x * x.conjugate(), if x == F4::ZERO { F4::ZERO } else { F4::ONE });
    }
    if let Ok(b) = F2::parse_symbol(text) {
        assert!(F4::from(b).is_binary());
    }
});
