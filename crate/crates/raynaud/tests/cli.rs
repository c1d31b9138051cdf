use std::process::{Command, Output};

fn raynaud(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_raynaud"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn invariants_text_output() {
    let out = raynaud(&["invariants", "-g", "2", "--slope", "-3", "-R", "1", "--m", "0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("rank   = 11"));
    assert!(text.contains("degree = 4"));
    assert!(text.contains("slope  = 4/11"));
}

#[test]
fn invariants_json_roundtrip() {
    let out = raynaud(&[
        "invariants", "-g", "2", "-R", "2", "--m", "1", "--theta", "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["rank"], "40");
    assert_eq!(v["degree"], "-40");
    assert_eq!(v["slope"]["num"], "-1");
    assert_eq!(v["slope"]["den"], "1");
}

#[test]
fn invariants_requires_slope_without_theta() {
    let out = raynaud(&["invariants", "-g", "2", "-R", "1", "--m", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("error:"));
}

#[test]
fn raynaud_table_json_values() {
    let out = raynaud(&[
        "raynaud-table", "--genus", "2..2", "--rank", "2..2", "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["rows"][0]["rank"], "59539855602920");
    assert_eq!(v["rows"][0]["slope"]["num"], "50");
    assert_eq!(v["rows"][0]["slope"]["den"], "313");
}

#[test]
fn raynaud_table_text_switches_to_scientific() {
    let out = raynaud(&["raynaud-table", "--genus", "3..3", "--rank", "4..4"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("2.18037666849e230"));
}

#[test]
fn basepoint_table_csv() {
    let out = raynaud(&[
        "basepoint-table", "--genus", "2..3", "--level", "2..3", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("40"));
    assert!(text.contains("3718"));
    assert!(text.contains("5130"));
}

#[test]
fn cor3_and_bounds_and_fit() {
    let out = raynaud(&["cor3", "-g", "2", "-R", "3", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["a"], "50");
    assert_eq!(v["b"], "43");
    assert_eq!(v["threshold"], "7/3");
    assert_eq!(v["m_min"], 3);

    let out = raynaud(&["bounds", "-g", "5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["two_theta_basepoint_rank"], "301");
    assert_eq!(v["equals_min_rank_table"], true);

    let out = raynaud(&["fit", "-R", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["degree"], 2);
    assert_eq!(v["coefficients_constant_first"][2], "27/2");
}

#[test]
fn verify_exit_codes() {
    let out = raynaud(&["verify", "--grid", "g=2..2,R=2..2,m=0..5,r=1..1"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("0 failed"));

    let out = raynaud(&[
        "verify", "--grid", "g=2..2,R=2..2,m=0..5,r=1..1", "--negative-control",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn deterministic_output() {
    let a = raynaud(&["raynaud-table", "--format", "csv"]);
    let b = raynaud(&["raynaud-table", "--format", "csv"]);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn invalid_input_exits_one() {
    let out = raynaud(&["invariants", "-g", "1", "--slope", "-2", "-R", "1", "--m", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let out = raynaud(&["invariants", "-g", "2", "--slope", "-9", "-R", "1", "--m", "0"]);
    assert_eq!(out.status.code(), Some(1));
}
