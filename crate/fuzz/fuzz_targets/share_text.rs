#![no_main]

use libfuzzer_sys::fuzz_target;
use tridiag::sss::Share;

fuzz_target!(|text: &str| {
    if let Ok(share) = Share::parse_text(text) {
        assert_eq!(share.v.len(), 2 * share.n);
        assert_eq!(Share::parse_text(&share.to_text()).unwrap(), share);
    }
});
