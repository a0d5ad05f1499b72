#![no_main]

use libfuzzer_sys::fuzz_target;
use pruwalk::io::{monomial_key, parse_monomial_key};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(m) = parse_monomial_key(s) {
        assert_eq!(parse_monomial_key(&monomial_key(&m)).unwrap(), m);
    }
});
