#![no_main]

use latcov_core::io::parse_body_spec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = parse_body_spec(s);
    }
});
