use std::process::{Command, Output};

use serde_json::Value;

fn latcov(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latcov")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn minima_report_for_the_square() {
    let out = latcov(&["minima", "--body", "cube:2", "--lattice", "Z2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["covering_product"]["lo"], "1");
    assert_eq!(v["covering_product"]["certified_exact"], true);
    assert_eq!(v["width"], "2");
}

#[test]
fn minima_with_json_inputs() {
    let body = r#"{"vertices": [["1","0"],["0","1"],["-1","-1"]]}"#;
    let lattice = r#"{"basis": [["1","0"],["0","1"]]}"#;
    let out = latcov(&["minima", "--body", body, "--lattice", lattice, "--tol", "1/32", "--bound", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["covering_product"]["lo"], "3/4");
    assert_eq!(v["mus"][1]["lo"], "1");
}

#[test]
fn makai_graph_diameter() {
    let out = latcov(&["graph", "--lattice", "makai:3", "--weights", "1,1,1", "--diameter"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["vertices"], 16);
    assert_eq!(v["diameter"], "3");
    let dot = latcov(&["graph", "--lattice", "makai:3", "--dot"]);
    assert!(String::from_utf8_lossy(&dot.stdout).contains("digraph"));
}

#[test]
fn verify_reports_and_exit_codes() {
    let out = latcov(&["verify", "--suite", "checkerboard", "--n", "3", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v.as_array().unwrap().len(), 2);
    assert!(v.as_array().unwrap().iter().all(|r| r["status"] == "pass"));
    let csv = latcov(&["verify", "--suite", "flatness", "--csv"]);
    let text = String::from_utf8_lossy(&csv.stdout);
    assert!(text.starts_with("claim_id,expected,computed,status"));
    assert!(text.contains("skipped: unspecified constant"));
    assert_eq!(latcov(&["verify", "--suite", "nonexistent"]).status.code(), Some(2));
}

#[test]
fn linforms_and_explore() {
    let out = latcov(&["linforms", "--matrix", "[[3,3,-4],[3,-4,3],[-4,3,3]]", "--radius", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["min_value"], "12");
    assert_eq!(v["certified"], true);
    let out = latcov(&["explore", "--n", "2", "--samples", "4", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["floor_violations"], 0);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(latcov(&["minima", "--body", "sphere:3", "--lattice", "Z3"]).status.code(), Some(2));
    assert_eq!(latcov(&["minima", "--body", "cube:2", "--lattice", "Z3"]).status.code(), Some(2));
    assert_eq!(latcov(&["minima", "--body", "cube:2", "--lattice", "Z2", "--tol", "0"]).status.code(), Some(2));
    assert_eq!(latcov(&["linforms", "--matrix", "[[1,2],[2,4]]"]).status.code(), Some(1));
    assert_eq!(latcov(&["explore", "--n", "5"]).status.code(), Some(2));
    assert_eq!(latcov(&["frobnicate"]).status.code(), Some(2));
}
