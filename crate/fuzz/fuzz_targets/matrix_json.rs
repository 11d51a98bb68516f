#![no_main]

use latcov_core::io::{matrix_from_json, matrix_to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(m) = matrix_from_json(s) {
        assert_eq!(matrix_from_json(&matrix_to_json(&m).to_string()).unwrap(), m);
    }
});
