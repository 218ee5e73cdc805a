#![no_main]

use libfuzzer_sys::fuzz_target;
use tridiag::code::singleton_classify;
use tridiag::DmaxTable;

fuzz_target!(|text: &str| {
    let Ok(table) = DmaxTable::parse_json(text) else { return };
    for &n in table.0.keys().filter(|&&n| n <= 64) {
        for d in 0..=n / 2 + 2 {
            let _ = singleton_classify(n, n, d, Some(&table));
        }
    }
});
