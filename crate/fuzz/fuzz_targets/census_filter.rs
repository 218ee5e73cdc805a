#![no_main]

use libfuzzer_sys::fuzz_target;
use tridiag::census::CensusPredicate;

fuzz_target!(|text: &str| {
    if let Ok(p) = text.parse::<CensusPredicate>() {
        assert_eq!(p.to_string().parse::<CensusPredicate>().unwrap(), p);
    }
});
