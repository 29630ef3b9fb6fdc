use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn coheart(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coheart")).args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("coheart-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn preset(name: &str) -> PathBuf {
    let out = coheart(&["paper-example", name]);
    assert!(out.status.success());
    let path = scratch(&format!("{name}.json"));
    fs::write(&path, &out.stdout).unwrap();
    path
}

#[test]
fn analyze_then_recheck() {
    let config = preset("nakayama-a5");
    let report = scratch("nakayama-report.json");
    let out = coheart(&["analyze", "--config", config.to_str().unwrap(), "--report", report.to_str().unwrap(), "--ascii"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("heart: {[2,2], [3,4], [2,4]}"), "{err}");
    assert!(err.contains('★'));
    let out = coheart(&["recheck", "--report", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn derived_preset_runs() {
    let out = coheart(&["paper-example", "derived-a4", "--run"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["outcome"], "passed");
}

#[test]
fn dual_and_enumerate() {
    let config = preset("nakayama-a5");
    let out = coheart(&["dual", "--config", config.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let small = scratch("a3.json");
    fs::write(&small, r#"{"context": "module", "algebra": {"n": 3}}"#).unwrap();
    let out = coheart(&["enumerate", "--config", small.to_str().unwrap(), "--verify-theorems"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("5 cotorsion pairs"));
}

#[test]
fn bad_input_exits_two() {
    let bad = scratch("bad.json");
    fs::write(&bad, r#"{"context": "module", "algebra": {"n": 3}, "u": {"items": ["[6,2]"]}}"#).unwrap();
    assert_eq!(coheart(&["analyze", "--config", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(coheart(&["paper-example", "nope"]).status.code(), Some(2));
    assert_eq!(coheart(&["analyze", "--config", "/nonexistent.json"]).status.code(), Some(2));
}

#[test]
fn tampered_report_fails_recheck() {
    let config = preset("nakayama-a5");
    let report = scratch("tampered.json");
    coheart(&["analyze", "--config", config.to_str().unwrap(), "--report", report.to_str().unwrap()]);
    let mut r: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    r["module"]["h_images"][0]["coreflection"]["middle"] = serde_json::json!({});
    fs::write(&report, r.to_string()).unwrap();
    assert_eq!(coheart(&["recheck", "--report", report.to_str().unwrap()]).status.code(), Some(1));
}
