#![no_main]

use libfuzzer_sys::fuzz_target;
use pruwalk::prudent::{is_admissible, Walk, WalkFamily};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(w) = s.parse::<Walk>() {
        assert_eq!(w.to_string().parse::<Walk>().unwrap(), w);
        if w.len() <= 64 {
            let _ = is_admissible(&w, WalkFamily::TWO_SIDED_TAILS);
        }
    }
});
