#![no_main]

use latcov_core::io::{lattice_from_json, lattice_to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(l) = lattice_from_json(s) {
        let again = lattice_from_json(&lattice_to_json(&l).to_string()).expect("round trip");
        assert_eq!(again.det_abs(), l.det_abs());
    }
});
