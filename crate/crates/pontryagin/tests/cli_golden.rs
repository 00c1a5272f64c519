//! End-to-end tests of the command line binary: exit codes, JSON shape,
//! determinism, and diff location on perturbed expectations.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pontryagin"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

#[test]
fn analyze_is_deterministic_and_green() {
    for name in ["ex41.krf", "ex42.krf"] {
        let path = fixture_path(name);
        let path = path.to_str().unwrap();
        let first = run(&["analyze", path]);
        let second = run(&["analyze", path]);
        assert_eq!(exit_code(&first), 0, "stderr: {}", String::from_utf8_lossy(&first.stderr));
        assert_eq!(first.stdout, second.stdout, "analyze must be deterministic");

        let report: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
        assert!(report.get("stopped_at").is_none());
        let certs = report["certificates"].as_array().unwrap();
        assert!(!certs.is_empty());
        assert!(certs.iter().all(|c| c["status"] != "fail"));
        assert!(report["evaluations"].as_array().is_some());
    }
}

#[test]
fn analyze_text_output() {
    let path = fixture_path("ex42.krf");
    let output = run(&["analyze", path.to_str().unwrap(), "--output", "text"]);
    assert_eq!(exit_code(&output), 0);
    let text = String::from_utf8(output.stdout).unwrap();
    assert!(text.contains("negative index 2"));
    assert!(text.contains("summary:"));
    assert!(text.contains("0 fail"));
}

#[test]
fn verify_accepts_the_fixtures() {
    for name in ["ex41.krf", "ex42.krf"] {
        let path = fixture_path(name);
        let output = run(&["verify", path.to_str().unwrap()]);
        assert_eq!(exit_code(&output), 0, "stderr: {}", String::from_utf8_lossy(&output.stderr));
        let summary: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
        assert_eq!(summary["matched"], true);
        assert_eq!(summary["diffs"].as_array().unwrap().len(), 0);
    }
}

#[test]
fn verify_rejects_a_perturbed_golden_with_a_located_diff() {
    let golden = std::fs::read_to_string(fixture_path("ex42.krf")).unwrap();
    let perturbed = golden.replacen("[\"1/2\", \"3/4\", \"-1/2\"]", "[\"1/2\", \"3/4\", \"1/2\"]", 1);
    assert_ne!(golden, perturbed);
    let mut file = tempfile::NamedTempFile::with_suffix(".krf").unwrap();
    file.write_all(perturbed.as_bytes()).unwrap();
    let output = run(&["verify", file.path().to_str().unwrap()]);
    assert_eq!(exit_code(&output), 1);
    let summary: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(summary["matched"], false);
    let diffs = summary["diffs"].as_array().unwrap();
    assert!(
        diffs.iter().any(|d| {
            let d = d.as_str().unwrap();
            d.contains("P[1][2]") && d.contains("expected 1/2") && d.contains("got -1/2")
        }),
        "diffs: {diffs:?}"
    );
}

#[test]
fn malformed_files_exit_2() {
    let mut file = tempfile::NamedTempFile::with_suffix(".krf").unwrap();
    file.write_all(b"{ \"space\": ").unwrap();
    let output = run(&["analyze", file.path().to_str().unwrap()]);
    assert_eq!(exit_code(&output), 2);
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains("parse error"), "stderr: {stderr}");

    let output = run(&["analyze", "/nonexistent/file.krf"]);
    assert_eq!(exit_code(&output), 2);

    // A structurally invalid space also exits 2, with a clear message.
    let mut file = tempfile::NamedTempFile::with_suffix(".krf").unwrap();
    file.write_all(
        br#"{
            "space": { "dim": 1, "J": [["2"]] },
            "A": { "matrix": [["0"]] },
            "gamma": [["1"]],
            "form": "holomorphic_at_infinity"
        }"#,
    )
    .unwrap();
    let output = run(&["analyze", file.path().to_str().unwrap()]);
    assert_eq!(exit_code(&output), 2, "stderr: {}", String::from_utf8_lossy(&output.stderr));
}

#[test]
fn eval_reports_values_and_exit_codes() {
    let path = fixture_path("ex42.krf");
    let path = path.to_str().unwrap();

    let output = run(&["eval", path, "--at", "2"]);
    assert_eq!(exit_code(&output), 0);
    let value: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(value["q"][0][0], "-3/4");
    assert_eq!(value["q"][0][1], "1/2");
    assert_eq!(value["q"][1][1], "1/3");
    assert_eq!(value["weyl_function"], value["q"]);
    assert_eq!(value["weyl_matches_q"], true);

    let output = run(&["eval", path, "--at", "1"]);
    assert_eq!(exit_code(&output), 0);
    let value: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(value["q"][0][0], "-2");
    assert_eq!(value["q"][1][0], "1");
    assert_eq!(value["q"][1][1], "1/2");

    let output = run(&["eval", path, "--at", "1+1i"]);
    assert_eq!(exit_code(&output), 0);
    let value: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(value["z"], "1+1i");

    // An eigenvalue is a precondition failure, not a crash.
    let output = run(&["eval", path, "--at", "0"]);
    assert_eq!(exit_code(&output), 3);
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains("resolvent"), "stderr: {stderr}");

    // Bad scalar syntax is an input error.
    let output = run(&["eval", path, "--at", "1//2"]);
    assert_eq!(exit_code(&output), 2);
}

#[test]
fn analyze_stops_with_exit_3_when_a_precondition_fails() {
    let mut file = tempfile::NamedTempFile::with_suffix(".krf").unwrap();
    file.write_all(
        br#"{
            "space": { "dim": 3, "J": [["0","1","0"],["1","0","0"],["0","0","-1"]] },
            "A": { "matrix": [["0","1","0"],["0","0","0"],["0","0","-1"]] },
            "gamma": [["1"],["0"],["0"]],
            "form": "holomorphic_at_infinity"
        }"#,
    )
    .unwrap();
    let output = run(&["analyze", file.path().to_str().unwrap()]);
    assert_eq!(exit_code(&output), 3);
    let report: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(report["stopped_at"], "projection");
    assert!(report["q_prime_infinity"]["invertible"] == false);
}
