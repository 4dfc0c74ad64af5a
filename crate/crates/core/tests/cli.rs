use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(rel).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grprop")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn canonicalize_reports_betti_numbers() {
    let out = run(&["canonicalize", &fixture("graphs/diamond.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["betti"], serde_json::json!([0, 1]));
    assert!(!out.stderr.is_empty());
}

#[test]
fn invalid_input_is_a_validation_error() {
    assert_eq!(run(&["canonicalize", &fixture("graphs/wheel.json")]).status.code(), Some(1));
    assert_eq!(run(&["enumerate", "--scheme", "nonsense"]).status.code(), Some(1));
    assert_eq!(run(&["classify", "corpus:no_such_morphism"]).status.code(), Some(1));
}

#[test]
fn config_sets_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    std::fs::write(&config, r#"{"bound_vertices":1}"#).unwrap();
    let config = config.display().to_string();
    let base = ["--config", config.as_str(), "enumerate", "--profile", "(0;0)", "--colors", "1", "--arity", "1,1"];
    let from_file = json(&run(&base));
    assert_eq!(from_file["classes"], 3);
    let mut flagged = base.to_vec();
    flagged.extend(["--bound-vertices", "2"]);
    assert_eq!(json(&run(&flagged))["classes"], 8);
}

#[test]
fn classify_exit_code_follows_no_flags() {
    let fine = run(&["classify", &fixture("morphisms/identity_end2.json")]);
    assert_eq!(fine.status.code(), Some(0));
    let bad = run(&["classify", &fixture("morphisms/support_collapse.json")]);
    assert_eq!(bad.status.code(), Some(3));
    let v = json(&bad);
    assert_eq!(v["W1"]["flag"], "No");
    assert_eq!(v["W1"]["witness"]["reason"]["kind"], "pi0_mismatch");
}

#[test]
fn text_format_prints_the_summary() {
    let out = run(&["--format", "text", "classify", "corpus:E2_swap"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("W1 yes"), "{text}");
    assert!(serde_json::from_str::<Value>(&text).is_err());
}

#[test]
fn lift_and_free_produce_json() {
    let lift = run(&["lift", &fixture("morphisms/horn_into_simplex.json")]);
    assert_eq!(lift.status.code(), Some(0));
    json(&lift);
    let free = run(&["--bound-vertices", "2", "free", "corpus:T1", "--profile", "(0;0)", "--arity", "1,1"]);
    assert_eq!(free.status.code(), Some(0), "{}", String::from_utf8_lossy(&free.stderr));
    json(&free);
}

#[test]
fn quick_selftest_passes() {
    let out = run(&["selftest", "--quick", "--only", "7,8,10,11"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["failed"], 0);
    assert_eq!(v["results"].as_array().unwrap().len(), 4);
}
