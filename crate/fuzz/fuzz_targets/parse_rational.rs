#![no_main]

use libfuzzer_sys::fuzz_target;
use pruwalk::io::parse_rational;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(x) = parse_rational(s) {
        // Display is canonical and reads back to the same value.
        assert_eq!(parse_rational(&x.to_string()).unwrap(), x);
    }
});
