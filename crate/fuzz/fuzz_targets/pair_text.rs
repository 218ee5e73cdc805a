#![no_main]

use libfuzzer_sys::fuzz_target;
use tridiag::GeneratorVectorPair;

fuzz_target!(|text: &str| {
    let strict = GeneratorVectorPair::parse(text);
    let Ok(pair) = GeneratorVectorPair::parse_relaxed(text) else {
        assert!(strict.is_err());
        return;
    };
    assert_eq!(GeneratorVectorPair::parse_relaxed(&pair.to_string()).unwrap(), pair);
    assert_eq!(strict.is_ok(), pair.len() >= 3);
    if pair.len() <= 16 {
        let t = pair.build();
        assert_eq!(t.code().f2_rank(), pair.len());
        assert_eq!(t.to_graph().to_generator(), *t.matrix());
    }
});
