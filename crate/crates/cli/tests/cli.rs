//! Smoke tests for the command-line surface: flags, formats, exit codes.

use std::process::Command;

fn wlp() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wlp"))
}

#[test]
fn series_json_and_markdown() {
    let out = wlp()
        .args(["--format", "json", "series", "--n", "3", "--d", "2", "--m", "4"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["coefficients"], serde_json::json!([1, 3, 2]));
    assert_eq!(v["truncated"], serde_json::json!(true));

    let out = wlp()
        .args(["series", "--n", "3", "--d", "2", "--m", "4"])
        .output()
        .unwrap();
    assert!(String::from_utf8_lossy(&out.stdout).contains("1 + 3 t + 2 t^2"));
}

#[test]
fn env_overrides_mirror_flags() {
    let out = wlp()
        .env("WLP_FORMAT", "json")
        .args(["series", "--n", "3", "--d", "2", "--m", "4"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(serde_json::from_slice::<serde_json::Value>(&out.stdout).is_ok());
}

#[test]
fn bad_prime_is_an_error() {
    let out = wlp()
        .args(["--prime", "91", "series", "--n", "3", "--d", "2", "--m", "4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sdeg_table_contains_known_values() {
    let out = wlp()
        .args(["sdeg", "--n-max", "6", "--d-max", "5"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("| 6 | 5 | 13 | 12 |"), "{text}");
    assert!(text.contains("| 5 | 2 | 3 | 2 |"), "{text}");
}

#[test]
fn wlp_profile_json() {
    let out = wlp()
        .args([
            "--format", "json", "--spec", "random", "wlp", "--n", "4", "--d", "2",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], serde_json::json!("AllMaximal"));
}

#[test]
fn classify_small_grid_exit_codes() {
    let out = wlp()
        .args(["--format", "json", "classify", "--n-max", "3", "--d-max", "2"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let records = wlp_core::report::parse_json(&String::from_utf8_lossy(&out.stdout)).unwrap();
    assert_eq!(records.len(), 6);
    assert!(records
        .iter()
        .all(|r| r.verdict == wlp_core::classify::Verdict::Holds));

    // a wrong expectation flips the exit code to 1
    let dir = std::path::PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let expect_path = dir.join("bad-expectations.jsonl");
    let mut bad = records[0].clone();
    bad.verdict = wlp_core::classify::Verdict::Fails;
    std::fs::write(&expect_path, wlp_core::report::render_json(&[bad])).unwrap();
    let out = wlp()
        .args([
            "--format",
            "json",
            "classify",
            "--n-max",
            "3",
            "--d-max",
            "2",
            "--expect",
            expect_path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn witness_reports_verification() {
    let out = wlp()
        .args(["--format", "json", "witness", "--n", "5", "--d", "3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["degree"], v["expected"]);
    assert_eq!(v["verified"], serde_json::json!(true));
}

#[test]
fn sporadic_rejects_unknown_signature() {
    let out = wlp()
        .args(["sporadic", "--n", "4", "--m", "7", "--d", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
