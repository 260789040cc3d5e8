//! End-to-end tests of the `tps` binary: exit codes, output formats,
//! input validation.

use std::path::Path;
use std::process::{Command, Output};

fn tps(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tps"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn verify_json_exits_zero_and_is_schema_complete() {
    let out = tps(&["verify", "--seed", "0", "--format", "json"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    for field in [
        "version",
        "timestamp",
        "seed",
        "samples",
        "tolerance_exact",
        "tolerance_sampled",
        "checks",
        "summary",
    ] {
        assert!(doc.get(field).is_some(), "missing {field}");
    }
    assert_eq!(doc["summary"]["failed"], 0);
    let checks = doc["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 8);
    for check in checks {
        assert_eq!(check["passed"], true, "{}", check["id"]);
    }
}

#[test]
fn verify_reports_are_identical_modulo_timestamp() {
    let mut docs = Vec::new();
    for _ in 0..2 {
        let out = tps(&["verify", "--seed", "0", "--format", "json"]);
        assert!(out.status.success());
        let mut doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        doc.as_object_mut().unwrap().remove("timestamp");
        docs.push(serde_json::to_vec(&doc).unwrap());
    }
    assert_eq!(docs[0], docs[1]);
}

#[test]
fn verify_json_round_trips() {
    let out = tps(&["verify", "--seed", "3", "--format", "json"]);
    let text = stdout(&out);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    let reserialized = serde_json::to_string(&doc).unwrap();
    let reparsed: serde_json::Value = serde_json::from_str(&reserialized).unwrap();
    assert_eq!(doc, reparsed);
}

#[test]
fn verify_writes_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = tps(&[
        "verify",
        "--seed",
        "0",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["seed"], 0);
}

#[test]
fn verify_unwritable_output_fails_without_partial_file() {
    let path = Path::new("/nonexistent-dir-tps/report.json");
    let out = tps(&["verify", "--seed", "0", "--output", "/nonexistent-dir-tps/report.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!stderr(&out).is_empty());
    assert!(!path.exists());
}

#[test]
fn classify_builtin_singlet() {
    let out = tps(&["classify", "--state", "singlet", "--format", "json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let entries = doc["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 6);
    let by_label = |l: &str| {
        entries
            .iter()
            .find(|e| e["label"] == l)
            .unwrap_or_else(|| panic!("label {l}"))
    };
    assert_eq!(by_label("123")["separability"], "Entangled");
    assert_eq!(by_label("321")["separability"], "Product");
    assert!(doc["rank_threshold"].as_f64().unwrap() > 0.0);
}

#[test]
fn classify_single_label_filter() {
    let out = tps(&["classify", "--state", "phi+", "--label", "321", "--format", "json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let entries = doc["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 1);
    assert_eq!(entries[0]["label"], "321");
    assert_eq!(entries[0]["separability"], "Product");
}

#[test]
fn classify_state_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("state.json");
    std::fs::write(
        &path,
        r#"{"amplitudes": [[1, 0], [0, 0], [0, 0], [0, 0]]}"#,
    )
    .unwrap();
    let out = tps(&["classify", "--file", path.to_str().unwrap(), "--format", "json"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    for e in doc["entries"].as_array().unwrap() {
        assert_eq!(e["separability"], "Product");
    }
}

#[test]
fn classify_rejects_wrong_arity_with_field_name() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"amplitudes": [[1, 0], [0, 0], [0, 0]]}"#).unwrap();
    let out = tps(&["classify", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("amplitudes"), "{err}");
    assert!(err.contains("expected 4 amplitudes"), "{err}");
}

#[test]
fn classify_rejects_zero_vector() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("zero.json");
    std::fs::write(
        &path,
        r#"{"amplitudes": [[0,0],[0,0],[0,0],[0,0]], "normalize": true}"#,
    )
    .unwrap();
    let out = tps(&["classify", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("amplitudes"));
}

#[test]
fn classify_rejects_malformed_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("malformed.json");
    std::fs::write(&path, "{not json").unwrap();
    let out = tps(&["classify", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("JSON"));
}

#[test]
fn simulate_singlet_under_321_masses_on_10_and_11() {
    let out = tps(&[
        "simulate", "--state", "singlet", "--label", "321", "--shots", "100000", "--seed", "7",
        "--format", "json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let joint = doc["counts"]["joint"].as_array().unwrap();
    assert_eq!(joint[0], 0);
    assert_eq!(joint[1], 0);
    let n10 = joint[2].as_u64().unwrap();
    let n11 = joint[3].as_u64().unwrap();
    assert_eq!(n10 + n11, 100_000);
}

#[test]
fn simulate_same_seed_is_identical() {
    let args = [
        "simulate", "--state", "uniform", "--label", "123", "--shots", "20000", "--seed", "5",
        "--format", "json",
    ];
    assert_eq!(stdout(&tps(&args)), stdout(&tps(&args)));
}

#[test]
fn simulate_rejects_zero_shots_and_bad_label() {
    let out = tps(&["simulate", "--state", "singlet", "--label", "123", "--shots", "0"]);
    assert_eq!(out.status.code(), Some(2));

    let out = tps(&["simulate", "--state", "singlet", "--label", "322"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("123, 132, 213, 231, 312, 321"));
}

#[test]
fn table_matches_color_sums() {
    let out = tps(&["table", "321"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("P_C + P_G"));
    assert!(text.contains("Alice IFF Bob"));

    let out = tps(&["table", "123"]);
    assert!(stdout(&out).contains("P_C + P_M"));

    let out = tps(&["table", "999"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_builtin_state_is_a_usage_error() {
    let out = tps(&["classify", "--state", "w"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown built-in state"));
}
