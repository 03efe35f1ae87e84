use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_fiberfield");

fn write_config(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn fiberfield(args: &[&str], config: &Path) -> Output {
    Command::new(BIN).args(args).arg("--config").arg(config).output().unwrap()
}

fn report(out: &Output) -> Value {
    assert!(out.status.success(), "exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn validator() -> jsonschema::Validator {
    let text = include_str!("../../../schemas/fiberfield-report-1.schema.json");
    jsonschema::validator_for(&serde_json::from_str(text).unwrap()).unwrap()
}

fn assert_valid(v: &Value) {
    let errors: Vec<String> = validator().iter_errors(v).map(|e| format!("{} at {}", e, e.instance_path())).collect();
    assert!(errors.is_empty(), "schema violations: {errors:#?}");
}

const CONFIGS: [(&str, &str, &str); 8] = [
    ("der-solve", "laurent", r#"{"curve": {"type": "laurent", "degree_bound": 3}}"#),
    ("der-solve", "cusp", r#"{"curve": {"type": "cusp", "degree_bound": 3}}"#),
    (
        "der-solve",
        "family",
        r#"{"curve": {"type": "weierstrass", "params": {"e1": "t", "e2": "-t", "e3": "0"}, "degree_bound": 2}, "points": ["1", "0"]}"#,
    ),
    ("cohomology", "witt", r#"{"cohomology": {"algebra": "witt", "windows": [3, 4], "coefficients": ["trivial", "adjoint"], "h1": true}}"#),
    ("cohomology", "punctured", r#"{"cohomology": {"algebra": "punctured_p1", "points": ["0", "1"]}}"#),
    (
        "cohomology",
        "table",
        r#"{"cohomology": {"algebra": "table", "labels": ["e", "f", "h"], "brackets": [[0, 1, [[2, "1"]]], [0, 2, [[0, "-2"]]], [1, 2, [[1, "2"]]]], "coefficients": ["trivial", "adjoint"]}}"#,
    ),
    ("example", "scaled", r#"{"example": "scaled-bracket"}"#),
    ("example", "elliptic", r#"{"example": "fs-elliptic", "degree_bound": 3}"#),
];

#[test]
fn every_report_matches_the_schema() {
    let dir = TempDir::new().unwrap();
    for (command, name, text) in CONFIGS {
        let path = write_config(&dir, &format!("{name}.json"), text);
        let v = report(&fiberfield(&[command], &path));
        assert_eq!(v["command"], command, "{name}");
        assert_valid(&v);
    }
    let path = write_config(&dir, "cusp-ex.json", r#"{"degree_bound": 3}"#);
    assert_valid(&report(&fiberfield(&["example", "cusp-degeneration"], &path)));
}

#[test]
fn payload_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let path = write_config(&dir, "c.json", CONFIGS[5].2);
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("timing_ms");
        v
    };
    let a = strip(report(&fiberfield(&["cohomology"], &path)));
    let b = strip(report(&fiberfield(&["cohomology"], &path)));
    assert_eq!(a, b);
}

#[test]
fn out_flag_writes_the_report() {
    let dir = TempDir::new().unwrap();
    let path = write_config(&dir, "c.json", CONFIGS[0].2);
    let target = dir.path().join("report.json");
    let out = Command::new(BIN).args(["der-solve", "--config"]).arg(&path).arg("--out").arg(&target).output().unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(v["results"]["witt_comparison"]["matches"], true);
}

#[test]
fn exit_codes_follow_the_error_class() {
    let dir = TempDir::new().unwrap();
    let bad = write_config(&dir, "bad.json", "{ not json");
    let out = fiberfield(&["der-solve"], &bad);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("fiberfield: "));

    let unknown = write_config(&dir, "unknown.json", r#"{"curve": {"type": "laurent", "degree_bound": 2}, "colour": 1}"#);
    assert_eq!(fiberfield(&["der-solve"], &unknown).status.code(), Some(2));

    let ex = write_config(&dir, "ex.json", "{}");
    assert_eq!(fiberfield(&["example", "no-such-example"], &ex).status.code(), Some(2));
    assert_eq!(fiberfield(&["der-solve"], &dir.path().join("missing.json")).status.code(), Some(2));

    let heavy = write_config(&dir, "heavy.json", r#"{"curve": {"type": "laurent", "degree_bound": 4}}"#);
    let out = fiberfield(&["der-solve", "--budget", "1"], &heavy);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn alerts_go_to_stderr() {
    let dir = TempDir::new().unwrap();
    let path = write_config(&dir, "adj.json", r#"{"cohomology": {"algebra": "witt", "windows": [3, 4], "coefficients": ["adjoint"]}}"#);
    let out = fiberfield(&["cohomology"], &path);
    let v = report(&out);
    assert_eq!(v["alerts"].as_array().unwrap().len(), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("ALERT: adjoint H2 is nonzero"));
}
