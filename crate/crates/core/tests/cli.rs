use std::process::Command;

use serde_json::Value;

fn unitri(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_unitri")).args(args).output().expect("binary runs");
    let stdout = String::from_utf8_lossy(&out.stdout).to_string();
    let json = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap_or(-1), json, String::from_utf8_lossy(&out.stderr).to_string())
}

#[test]
fn classify_reports_shape_numbers() {
    let (code, v, _) = unitri(&["classify", "--n", "4", "--q", "2", "--entries", "[[3,1,1],[4,2,1]]"]);
    assert_eq!(code, 0);
    assert_eq!((v["is_verge"].clone(), v["a"].clone(), v["b"].clone()), (Value::Bool(true), 2.into(), 1.into()));
}

#[test]
fn diagonal_entry_is_an_input_error() {
    let (code, _, err) = unitri(&["classify", "--n", "4", "--entries", "[[2,2,1]]"]);
    assert_eq!(code, 1);
    assert!(err.contains("(2,2)"));
}

#[test]
fn count_goldens() {
    let (code, v, _) = unitri(&["count", "--n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["coefficients"], serde_json::json!({"t^2": 1, "t^1": 3, "t^0": 1}));
    let (_, v, _) = unitri(&["count", "--n", "4", "--check-q", "2,3"]);
    assert_eq!(v["evaluations"][0]["direct"], "16");
    assert_eq!(v["evaluations"][1]["direct"], "57");
}

#[test]
fn minimal_reads_a_verge_file() {
    let path = std::env::temp_dir().join(format!("unitri-verge-{}.json", std::process::id()));
    std::fs::write(&path, r#"{"n": 4, "q": "2", "entries": [[3, 1, 1], [4, 2, 1]]}"#).unwrap();
    let (code, v, _) = unitri(&["minimal", "--verge", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code, 0);
    assert_eq!(v["report"]["count_minimal"], 2);
    let betas: Vec<Value> = v["sources"]["characters"].as_array().unwrap().iter().map(|c| c["beta"][0].clone()).collect();
    assert_eq!(betas, vec![serde_json::json!([2, 1, 0]), serde_json::json!([2, 1, 1])]);
}

#[test]
fn not_a_verge_and_budget_exit_codes() {
    let (code, _, _) = unitri(&["minimal", "--n", "3", "--entries", "[[2,1,1],[3,1,1]]"]);
    assert_eq!(code, 1);
    let (code, _, _) = unitri(&["orbit", "--n", "6", "--entries", "[[6,1,1]]", "--budget", "10"]);
    assert_eq!(code, 2);
    let (code, _, _) = unitri(&["count", "--n", "3", "--bogus"]);
    assert_eq!(code, 1);
}

#[test]
fn verify_suite_passes_for_u4_f2() {
    let (code, v, _) = unitri(&["verify", "suite", "--n", "4", "--q", "2", "--workers", "2"]);
    assert_eq!(code, 0);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "passed"));
}

#[test]
fn text_format_and_help() {
    let out = Command::new(env!("CARGO_BIN_EXE_unitri")).args(["--format", "text", "count", "--n", "2"]).output().unwrap();
    assert!(String::from_utf8_lossy(&out.stdout).contains("polynomial: \"t + 1\""));
    let out = Command::new(env!("CARGO_BIN_EXE_unitri")).arg("--help").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("classify"));
}
