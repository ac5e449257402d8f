use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_chamber-basis"));
    for var in [
        "CHAMBER_BASIS_TOLERANCE",
        "CHAMBER_BASIS_SEED",
        "CHAMBER_BASIS_JSON",
        "CHAMBER_BASIS_EXACT",
        "CHAMBER_BASIS_SAMPLES",
    ] {
        c.env_remove(var);
    }
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = run(&all);
    let v = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (out.status.code().unwrap(), v)
}

fn dims(report: &Value) -> Vec<u64> {
    report["degrees"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["dim"].as_u64().unwrap())
        .collect()
}

#[test]
fn verify_fixture_passes() {
    let out = run(&["verify", "--fixture", "fig1", "--samples", "5"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(String::from_utf8_lossy(&out.stdout).contains("all checks passed"));
}

#[test]
fn minimal_at_zero_gives_betti_numbers() {
    let (code, v) = json(&["minimal", "--fixture", "fig1", "--lambda", "0,0,0,0"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "chamber-basis/1");
    assert_eq!(dims(&v["result"]["cohomology"]), vec![1, 4, 5]);
}

#[test]
fn compare_small_weights_agree() {
    let (code, v) = json(&["compare", "--fixture", "fig1", "--lambda", "1/100,1/50,-1/30,1/70"]);
    assert_eq!(code, 0);
    let r = &v["result"]["report"];
    assert_eq!(r["in_small_regime"], true);
    assert_eq!(r["agree"], true);
    assert_eq!(dims(&r["minimal"]), dims(&r["aomoto"]));
}

#[test]
fn exact_aomoto_needs_rational_weights() {
    let (code, v) = json(&[
        "aomoto",
        "--exact",
        "--fixture",
        "fig1",
        "--lambda",
        "1/3,1/5,1/7,-1/11",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["cohomology"]["exact"], true);
    let (code, v) = json(&["aomoto", "--exact", "--fixture", "fig1", "--lambda", "0.1+0.2i,0,0,0"]);
    assert_eq!(code, 23);
    assert_eq!(v["error"]["kind"], "invalid_weights");
}

#[test]
fn parse_error_has_its_own_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    fs::write(&path, "dim 2\n1//2 0 1\n0 1 0\n").unwrap();
    let out = run(&["poset", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(10));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn missing_file_and_unknown_fixture() {
    assert_eq!(run(&["poset", "/nonexistent/arr.txt"]).status.code(), Some(3));
    assert_eq!(run(&["poset", "--fixture", "nope"]).status.code(), Some(4));
    assert_eq!(run(&["poset"]).status.code(), Some(2));
}

#[test]
fn wrong_weight_count_is_dimension_mismatch() {
    let (code, v) = json(&["minimal", "--fixture", "fig1", "--lambda", "0,0"]);
    assert_eq!(code, 11);
    assert_eq!(v["ok"], false);
}

#[test]
fn json_output_is_deterministic() {
    let a = run(&["--json", "--seed", "7", "constants", "--fixture", "fig1"]);
    let b = run(&["--json", "--seed", "7", "constants", "--fixture", "fig1"]);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["result"]["entries"].as_array().unwrap().len(), 17);
}

#[test]
fn random_flag_is_found_without_one_in_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("arr.txt");
    fs::write(&path, "dim 2\n1 0 0\n0 1 0\n1 1 -1\n").unwrap();
    let (code, v) = json(&["strata", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["sizes"], serde_json::json!([1, 3, 3]));
}

#[test]
fn csv_files_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "minimal",
        "--fixture",
        "fig1",
        "--lambda",
        "1/3,1/5,1/7,1/11",
        "--csv-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    for q in 0..2 {
        let text = fs::read_to_string(dir.path().join(format!("minimal_d{q}.csv"))).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("row,col,re,im"));
        assert!(lines.count() > 0);
    }
}

#[test]
fn non_essential_poset_still_works() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("parallel.txt");
    fs::write(&path, "dim 2\n1 0 0\n1 0 -1\n").unwrap();
    let (code, v) = json(&["poset", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["essential"], false);
    let out = run(&["strata", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(14));
}
