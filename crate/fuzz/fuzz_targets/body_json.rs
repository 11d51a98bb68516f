#![no_main]

use latcov_core::io::{body_from_json, body_to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(k) = body_from_json(s) {
        let again = body_from_json(&body_to_json(&k).to_string()).expect("round trip");
        assert!(again.same_set(&k));
    }
});
