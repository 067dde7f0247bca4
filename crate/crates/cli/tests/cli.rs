use std::process::{Command, Output};

use serde_json::Value;

fn twistcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twistcat")).args(args).env_remove("TWISTCAT_CACHE_DIR").output().unwrap()
}

fn report(args: &[&str]) -> (bool, Value) {
    let out = twistcat(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)));
    (out.status.success(), v)
}

#[test]
fn generic_c2_is_semisimple() {
    let (ok, v) = report(&["run", "--groups", "C2", "--ell", "generic", "--tasks", "ssc"]);
    assert!(ok);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["tasks"][0]["details"]["verdict"], "certified-semisimple");
}

#[test]
fn unit_lambda_c2_is_not_semisimple() {
    let (ok, v) = report(&["run", "--groups", "C2", "--ell", "assign:2=1", "--tasks", "ssc"]);
    assert!(ok);
    let d = &v["tasks"][0]["details"];
    assert_eq!(d["verdict"], "certified-not-semisimple");
    assert!(!d["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn trivial_group_passes_all() {
    let (ok, v) = report(&["run", "--groups", "C1", "--tasks", "all"]);
    assert!(ok);
    assert_eq!(v["tasks"].as_array().unwrap().len(), 9);
    assert!(v["passed"].as_bool().unwrap());
}

#[test]
fn reports_are_byte_identical() {
    let args = ["run", "--groups", "C2,C3", "--tasks", "bases,ssc,gamma", "--seed", "5"];
    let a = twistcat(&args);
    let b = twistcat(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn text_format_and_output_file() {
    let dir = std::env::temp_dir().join(format!("twistcat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.txt");
    let out = twistcat(&["run", "--groups", "C3", "--tasks", "dims", "--format", "text", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("PASS dims"));
    assert!(text.ends_with("overall: PASS\n"));
}

#[test]
fn explain_tasks() {
    let out = twistcat(&["explain", "ssc"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("T_E^L"));
    let out = twistcat(&["explain", "gamma"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("nu"));
    let out = twistcat(&["explain", "bogus"]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("tau-oracle") && err.contains("gamma"));
}

#[test]
fn errors_exit_nonzero() {
    assert!(!twistcat(&["run", "--groups", "C2", "--tasks", "nope"]).status.success());
    assert!(!twistcat(&["run", "--groups", "C64", "--order-cap", "32", "--tasks", "dims"]).status.success());
    assert!(!twistcat(&["run", "--groups", "C6", "--ell", "assign:2=3", "--tasks", "dims"]).status.success());
}
