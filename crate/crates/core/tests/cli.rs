use std::fs;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const DEFECTIVE: &str = r#"{"rows": [["1/3", "2/3", "0"], ["1/3", "1/6", "1/2"], ["1/3", "1/6", "1/2"]]}"#;

fn stokit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stokit")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn validate_exit_codes() {
    let dir = TempDir::new().unwrap();
    let good = write(&dir, "good.json", DEFECTIVE);
    let bad = write(&dir, "bad.json", r#"{"rows": [["1/2", "1"], ["1/3", "0"]]}"#);
    let broken = write(&dir, "broken.json", r#"{"rows": [["1/2""#);

    let out = stokit(&["validate", &good]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["valid"], true);

    let out = stokit(&["validate", &bad]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["valid"], false);

    assert_eq!(stokit(&["validate", &broken]).status.code(), Some(2));
    assert_eq!(stokit(&["validate", "/nonexistent/matrix.json"]).status.code(), Some(2));
}

#[test]
fn analyze_is_deterministic_per_seed() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "m.json", DEFECTIVE);
    let a = stokit(&["analyze", &path, "--seed", "7", "--samples", "20"]);
    let b = stokit(&["analyze", &path, "--seed", "7", "--samples", "20"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let report = json(&a);
    assert_eq!(report["diagonalizable"], false);
}

#[test]
fn csv_input_and_row_stochastic_flag() {
    let dir = TempDir::new().unwrap();
    let rows = write(&dir, "rows.csv", "1/2,1/2\n1/4,3/4\n");
    assert_eq!(stokit(&["validate", &rows]).status.code(), Some(1));
    let out = stokit(&["--row-stochastic", "stationary", &rows]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["stationary"], serde_json::json!(["1/3", "2/3"]));
}

#[test]
fn simulate_writes_trace() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "m.json", DEFECTIVE);
    let trace = dir.path().join("trace.csv");
    let out = stokit(&["simulate", &path, "--start", "[1, 0, 0]", "--trace", trace.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdict"], "converged");

    let text = fs::read_to_string(&trace).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "step,x1,x2,x3,delta");
    assert_eq!(lines[1], "0,1,0,0,");
    assert_eq!(lines.len(), 4);
    assert!(lines[3].starts_with("2,1/3,1/3,1/3,"));
}

#[test]
fn swap_oscillates() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "swap.json", r#"{"rows": [[0, 1], [1, 0]]}"#);
    let out = stokit(&["simulate", &path, "--start", "1,0"]);
    let report = json(&out);
    assert_eq!(report["verdict"], "oscillating");
    assert_eq!(report["period"], 2);
}

#[test]
fn construct_variants() {
    let default = stokit(&["construct"]);
    let example = stokit(&["construct", "--example"]);
    let alias = stokit(&["construct", "--paper"]);
    assert_eq!(default.status.code(), Some(0));
    assert_eq!(default.stdout, example.stdout);
    assert_eq!(default.stdout, alias.stdout);

    let out = stokit(&["construct", "--lambda", "-1/4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stokit(&["construct", "--lambda", "-3/4"]).status.code(), Some(1));
    assert_eq!(stokit(&["construct", "--lambda", "1"]).status.code(), Some(1));
    assert_eq!(stokit(&["construct", "--lambda", "x"]).status.code(), Some(2));
}

#[test]
fn precision_flag_switches_backend() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "m.json", DEFECTIVE);
    let out = stokit(&["--precision", "float", "stationary", &path]);
    assert_eq!(out.status.code(), Some(0));
    let xi = json(&out)["stationary"].clone();
    for v in xi.as_array().unwrap() {
        let v: f64 = v.as_str().unwrap().parse().unwrap();
        assert!((v - 1.0 / 3.0).abs() < 1e-12);
    }
}
