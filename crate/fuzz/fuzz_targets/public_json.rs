#![no_main]

use libfuzzer_sys::fuzz_target;
use tridiag::sss::PublicBundle;

fuzz_target!(|text: &str| {
    if let Ok(bundle) = PublicBundle::parse_json(text) {
        assert_eq!(bundle.g, bundle.pair.build().double());
        assert_eq!(PublicBundle::parse_json(&bundle.to_json()).unwrap(), bundle);
    }
});
