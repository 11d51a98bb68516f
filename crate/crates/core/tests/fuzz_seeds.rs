//! Replays the checked-in fuzz corpus seeds through the same round trips
//! the fuzz targets assert.

use std::fs;
use std::path::PathBuf;

use latcov_core::exact::rational::{format_rational, parse_rational};
use latcov_core::io::{
    body_from_json, body_to_json, lattice_from_json, lattice_to_json, matrix_from_json, matrix_to_json, parse_body_spec,
    parse_lattice_spec,
};

fn seeds(target: &str) -> Vec<String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<String> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| fs::read_to_string(e.unwrap().path()).unwrap())
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn rational_seeds() {
    let mut parsed = 0;
    for s in seeds("parse_rational") {
        if let Ok(r) = parse_rational(&s) {
            assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
            parsed += 1;
        }
    }
    assert!(parsed >= 3);
}

#[test]
fn spec_seeds_parse() {
    for s in seeds("body_spec") {
        parse_body_spec(&s).unwrap_or_else(|e| panic!("{s}: {e}"));
    }
    for s in seeds("lattice_spec") {
        parse_lattice_spec(&s).unwrap_or_else(|e| panic!("{s}: {e}"));
    }
}

#[test]
fn json_seeds_round_trip() {
    for s in seeds("body_json") {
        let k = body_from_json(&s).unwrap_or_else(|e| panic!("{s}: {e}"));
        assert!(body_from_json(&body_to_json(&k).to_string()).unwrap().same_set(&k));
    }
    for s in seeds("lattice_json") {
        let l = lattice_from_json(&s).unwrap_or_else(|e| panic!("{s}: {e}"));
        assert_eq!(lattice_from_json(&lattice_to_json(&l).to_string()).unwrap().det_abs(), l.det_abs());
    }
    for s in seeds("matrix_json") {
        let m = matrix_from_json(&s).unwrap_or_else(|e| panic!("{s}: {e}"));
        assert_eq!(matrix_from_json(&matrix_to_json(&m).to_string()).unwrap(), m);
    }
}
