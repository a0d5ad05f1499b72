#![no_main]

use libfuzzer_sys::fuzz_target;
use pruwalk::io::{series_from_json, SeriesRecord};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(doc) = series_from_json(s) {
        for (name, series) in &doc {
            assert_eq!(&SeriesRecord::encode(name, series).decode().unwrap(), series);
        }
    }
});
