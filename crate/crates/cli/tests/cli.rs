use std::process::Command;

use relnum_cli::{run_command, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};
use serde_json::Value;

fn run(args: &[&str]) -> (i32, relnum_cli::Report) {
    run_command(std::iter::once("relnum").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&run(args).1.to_json()).unwrap()
}

#[test]
fn eval_exact_square_root() {
    let v = json(&["eval", "sqrt(2)*sqrt(2) - 2"]);
    assert_eq!(v["result"][0]["value"], "0");
    assert_eq!(v["passed"], true);
}

#[test]
fn eval_bindings() {
    let v = json(&["eval", "x = 1/3", "x + 1/6"]);
    assert_eq!(v["result"][0]["name"], "x");
    assert_eq!(v["result"][1]["value"], "1/2");
}

#[test]
fn eval_exit_codes() {
    assert_eq!(run(&["eval", "1/0"]).0, EXIT_FAIL);
    assert_eq!(run(&["eval", "sqrt(2"]).0, EXIT_USAGE);
    assert_eq!(run(&["eval", "sqrt(2)", "--context", "rational"]).0, EXIT_FAIL);
    assert_eq!(run(&["eval", "1", "--context", "complex"]).0, EXIT_USAGE);
}

#[test]
fn usage_errors() {
    assert_eq!(run(&[]).0, EXIT_USAGE);
    assert_eq!(run(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(run(&["verify-specrel", "--samples", "many"]).0, EXIT_USAGE);
    let (code, r) = run(&["--help"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(r.command, "usage");
}

#[test]
fn reports_are_sorted_and_stable() {
    let text = run(&["eval", "2"]).1.to_json();
    let v: Value = serde_json::from_str(&text).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert!(v.get("timings").is_none());
    assert_eq!(v["checks"], serde_json::json!([]));
    assert!(text.ends_with("}\n"));
    assert_eq!(text, run(&["eval", "2"]).1.to_json());
}

#[test]
fn timings_only_on_request() {
    let v = json(&["eval", "2", "--timings"]);
    assert!(v["timings"]["elapsed_ms"].is_u64());
}

#[test]
fn rcf_report_carries_certificates() {
    let v = json(&["verify-rcf", "--samples", "5"]);
    assert_eq!(v["passed"], true);
    let certs = v["checks"][0]["certificates"].as_array().unwrap();
    assert!(!certs.is_empty());
}

#[test]
fn specrel_rejects_bad_dimension() {
    assert_ne!(run(&["verify-specrel", "--dim", "1"]).0, EXIT_PASS);
}

#[test]
fn out_files_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let (code, _) = run(&["verify-specrel", "--samples", "60", "--seed", "3", "--out", p.to_str().unwrap()]);
        assert_eq!(code, EXIT_PASS);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn reparam_recovers_shift() {
    let v = json(&["reparam", "--shift", "-1/2", "--reverse"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["result"]["epsilon"], -1);
}

#[test]
fn binary_prints_value() {
    let out = Command::new(env!("CARGO_BIN_EXE_relnum")).args(["eval", "sqrt(2)*sqrt(2) - 2"]).output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "0");
    let bad = Command::new(env!("CARGO_BIN_EXE_relnum")).args(["eval", "sqrt(2"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
}

fn has_float(v: &Value) -> bool {
    match v {
        Value::Number(n) => n.is_f64(),
        Value::Array(a) => a.iter().any(has_float),
        Value::Object(m) => m.values().any(has_float),
        _ => false,
    }
}

#[test]
fn exit_codes_follow_verdicts_and_reports_stay_exact() {
    let runs: [&[&str]; 8] = [
        &["eval", "1/3 + root(x^3 - x - 1, 0)"],
        &["eval", "sqrt(-1)"],
        &["verify-field", "--context", "rational", "--samples", "15"],
        &["verify-rcf", "--samples", "3"],
        &["verify-specrel", "--samples", "40", "--dim", "2"],
        &["witness-e", "--max-degree", "2", "--max-height", "5"],
        &["reparam", "--accel", "2"],
        &["reparam", "--accel", "-1"],
    ];
    for args in runs {
        let (code, report) = run(args);
        let v: Value = serde_json::from_str(&report.to_json()).unwrap();
        if code != EXIT_USAGE {
            assert_eq!(code == EXIT_PASS, report.passed, "{args:?}");
        }
        assert!(!has_float(&v), "{args:?}");
    }
}
