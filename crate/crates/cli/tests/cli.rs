use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rainbow-star")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

#[test]
fn exact_out_star_min() {
    let out = run(&["bound", "--p", "0", "--q", "2", "--n", "5", "--c", "3", "--objective", "min"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["kind"], "EXACT");
    assert_eq!(v["value"], 6);
}

#[test]
fn asymptotic_bound_reports_thresholds() {
    let out = run(&["bound", "--p", "1", "--q", "3", "--c", "6", "--objective", "sum"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["kind"], "ASYMPTOTIC");
    assert_eq!(v["thresholds"]["chain"], "SECOND");
    assert_eq!(v["thresholds"]["t1"]["exact"], "4");
    assert_eq!(v["sum_threshold"]["exact"], "6+sqrt(12)");
}

#[test]
fn construct_then_check() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("s11.txt");
    let path = file.to_str().unwrap();
    let out = run(&["construct", "--family", "BIPARTITE_S11", "--n", "4", "--c", "3", "--p", "1", "--q", "1", "--out", path]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(json_of(&out)["edge_counts"]["min"], 4);

    let out = run(&["check", "--in", path, "--p", "1", "--q", "1"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["rainbow_free"], true);
    assert_eq!(v["edge_counts"]["min"], 4);
    assert!(v["embedding"].is_null());
}

#[test]
fn check_finds_a_star() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("path.txt");
    std::fs::write(&file, "rainbow-digraph v1\n3 2\n1 1 2\n2 2 3\n").unwrap();
    let out = run(&["check", "--in", file.to_str().unwrap(), "--p", "1", "--q", "1"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["rainbow_free"], false);
    assert!(!v["embedding"].is_null());
}

#[test]
fn oracle_small_path() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("witness.txt");
    let out = run(&[
        "oracle", "--n", "3", "--c", "2", "--p", "1", "--q", "1", "--objective", "min", "--out",
        file.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["optimum"], 3);
    assert_eq!(v["proved_optimal"], true);

    let check = run(&["check", "--in", file.to_str().unwrap(), "--p", "1", "--q", "1"]);
    assert_eq!(json_of(&check)["rainbow_free"], true);
}

#[test]
fn cover_oracle_matches_exact_value() {
    let out = run(&["oracle", "--cover", "--n", "5", "--c", "3", "--p", "0", "--q", "2", "--objective", "min"]);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["optimum"], 6);
}

#[test]
fn oracle_slot_guard_is_an_error() {
    let out = run(&["oracle", "--n", "6", "--c", "3", "--p", "1", "--q", "1", "--objective", "sum"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(json_of(&out)["error"].is_string());
}

#[test]
fn usage_error_exits_two() {
    let out = run(&["bound", "--p", "1", "--q", "1", "--c", "2", "--objective", "max"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["oracle", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn domain_error_exits_one_with_json() {
    let out = run(&["bound", "--p", "0", "--q", "0", "--n", "5", "--c", "3", "--objective", "min"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert!(v["error"].as_str().unwrap().contains("at least one edge"));
}

#[test]
fn verify_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("report.json");
    let out = run(&["verify", "--suite", "thresholds", "--out", file.to_str().unwrap()]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(v["summary"]["fail"], 0);
    assert!(v["cases"].as_array().is_some_and(|c| !c.is_empty()));
}
