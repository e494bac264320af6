//! End-to-end checks of the command-line interface: exact output strings,
//! exit codes, and the JSON report schema.

use std::process::Command;

fn qmink(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_qmink"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8_lossy(&out.stdout).to_string(),
        String::from_utf8_lossy(&out.stderr).to_string(),
        out.status.code().unwrap_or(-1),
    )
}

#[test]
fn normalize_prints_canonical_form() {
    let (stdout, _, code) = qmink(&["normalize", "--algebra", "r3", "c*b"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "b*c + ((q^2-1)/(q^2+1))*h^2");
}

#[test]
fn normalize_unknown_generator_exits_2() {
    let (_, stderr, code) = qmink(&["normalize", "--algebra", "r3", "x"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown generator"), "{stderr}");
}

#[test]
fn act_with_quantum_group_generator() {
    let (stdout, _, code) = qmink(&["act", "--gen", "X", "--theta", "0", "h"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "-((q^2+1)/q)*b");
}

#[test]
fn act_with_braided_operator() {
    // B_q(h) = [b, h] = -2_q b.
    let (stdout, _, code) = qmink(&["act", "--op", "Bq", "--algebra", "r3", "h"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "-((q^2+1)/q)*b");
    // d_l on the q-Minkowski algebra.
    let (stdout, _, code) = qmink(&["act", "--op", "dl", "--algebra", "r4", "b*l"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "b");
}

#[test]
fn eval_specializes_scalars() {
    let (stdout, _, code) = qmink(&["normalize", "--algebra", "r3", "--eval", "q=1", "c*b"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "b*c");
    let (stdout, _, code) = qmink(&["normalize", "--algebra", "r3", "--eval", "q=2", "c*b"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "b*c + (3/5)*h^2");
    // Pole: 1/(q-1) at q=1.
    let (_, _, code) = qmink(&[
        "normalize",
        "--algebra",
        "r3",
        "--eval",
        "q=1",
        "(1/(q-1))*b",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn rmatrix_checks_pass() {
    for check in ["ybe", "hecke", "traces", "ch"] {
        let (stdout, _, code) = qmink(&["rmatrix", "--check", check]);
        assert_eq!(code, 0, "{check}: {stdout}");
        assert!(stdout.trim().ends_with("pass"), "{check}: {stdout}");
    }
}

#[test]
fn maxwell_gradient_column_is_in_kernel() {
    // Classical sl(2)*: the gradient column of rho = b*c.
    let (stdout, _, code) = qmink(&[
        "maxwell",
        "--algebra",
        "sl2",
        "--column",
        "c;0;b", // (d_b, d_h, d_c) of b*c
    ]);
    assert_eq!(code, 0);
    for line in stdout.lines() {
        let (_, val) = line.split_once(' ').unwrap();
        assert_eq!(val.trim(), "0", "{stdout}");
    }
}

#[test]
fn maxwell_rejects_wrong_arity() {
    let (_, stderr, code) = qmink(&["maxwell", "--algebra", "r4", "--column", "b;h;c"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("length 4"), "{stderr}");
}

#[test]
fn verify_report_schema_and_exit() {
    let dir = std::env::temp_dir().join("qmink-cli-test-report.json");
    let (stdout, _, code) = qmink(&[
        "verify",
        "--suite",
        "classical",
        "--max-degree",
        "2",
        "--seed",
        "7",
        "--report",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{stdout}");
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&dir).unwrap()).unwrap();
    assert_eq!(json["version"], 1);
    assert_eq!(json["config"]["seed"], 7);
    assert_eq!(json["config"]["max_degree"], 2);
    let checks = json["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    for c in checks {
        assert!(c["status"] == "pass" || c["status"] == "reported", "{c}");
    }
    std::fs::remove_file(&dir).ok();
}

#[test]
fn verify_unknown_suite_exits_2() {
    let (_, stderr, code) = qmink(&["verify", "--suite", "bogus"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown suite"), "{stderr}");
}
