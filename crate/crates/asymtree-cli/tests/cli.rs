//! End-to-end tests of the `asymtree` binary: exit-code contract,
//! byte-determinism, and the wire formats.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_asymtree"));
    cmd.env_remove("ASYMTREE_SEED");
    cmd
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn stdout(output: &Output) -> &str {
    std::str::from_utf8(&output.stdout).expect("utf-8 stdout")
}

#[test]
fn decompose_examples() {
    let out = bin().args(["decompose", "0"]).output().unwrap();
    assert!(out.status.success());
    assert_eq!(stdout(&out), "coefficient,level\n");

    let out = bin()
        .args(["decompose", "3*u^0 + -2*u^1/2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(stdout(&out), "coefficient,level\n3,0\n-2,1/2\n");

    let out = bin()
        .args(["decompose", "3*u^0 + -2*u^1/2", "--format", "json"])
        .output()
        .unwrap();
    let parsed: serde_json::Value = serde_json::from_str(stdout(&out)).unwrap();
    assert_eq!(parsed[0]["coefficient"], "3");
    assert_eq!(parsed[1]["level"], "1/2");
}

#[test]
fn decompose_parse_error_exits_2() {
    let out = bin().args(["decompose", "3*v^2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("byte 2"), "stderr: {err}");
}

#[test]
fn verify_metric_is_deterministic_and_clean() {
    let run = || {
        bin()
            .args(["verify-metric", "--trials", "60", "--seed", "7"])
            .output()
            .unwrap()
    };
    let (a, b) = (run(), run());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "same seed must give identical bytes");
    for line in stdout(&a).lines().skip(1) {
        assert!(line.ends_with(",0"), "violation reported: {line}");
    }
    assert_eq!(stdout(&a).lines().count(), 1 + 3 * 6 + 4);
}

#[test]
fn verify_metric_rejects_zero_trials() {
    let out = bin()
        .args(["verify-metric", "--trials", "0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn seed_env_var_with_flag_priority() {
    let flagged = bin()
        .args(["verify-metric", "--trials", "40", "--seed", "7"])
        .env("ASYMTREE_SEED", "99")
        .output()
        .unwrap();
    let plain = bin()
        .args(["verify-metric", "--trials", "40", "--seed", "7"])
        .output()
        .unwrap();
    assert_eq!(flagged.stdout, plain.stdout, "flag must win over env");

    let via_env = bin()
        .args(["verify-metric", "--trials", "40"])
        .env("ASYMTREE_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(via_env.stdout, plain.stdout, "env must override default");

    let bad_env = bin()
        .args(["verify-metric", "--trials", "40"])
        .env("ASYMTREE_SEED", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(bad_env.status.code(), Some(2));
}

#[test]
fn embed_pair_identical_files_are_exact() {
    let a = fixture("demo_pair_a.json");
    let out = bin().arg("embed-pair").arg(&a).arg(&a).output().unwrap();
    assert!(out.status.success());
    for line in stdout(&out).lines().skip(1) {
        assert!(line.ends_with(",0,0"), "nonzero error: {line}");
    }
}

#[test]
fn embed_pair_error_column_decreases() {
    let out = bin()
        .arg("embed-pair")
        .arg(fixture("demo_pair_a.json"))
        .arg(fixture("demo_pair_b.json"))
        .output()
        .unwrap();
    assert!(out.status.success());
    let errors: Vec<f64> = stdout(&out)
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(errors.len(), 5);
    assert!(errors.windows(2).all(|w| w[1] < w[0]), "errors: {errors:?}");
}

#[test]
fn embed_pair_threshold_gates_exit_code() {
    let out = bin()
        .arg("embed-pair")
        .arg(fixture("demo_pair_a.json"))
        .arg(fixture("demo_pair_b.json"))
        .args(["--scales", "25", "--threshold", "1e-9"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn embed_pair_rejects_bad_input() {
    let dir = std::env::temp_dir().join("asymtree-cli-test-bad-json");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(
        &bad,
        r#"{"kind":"F","depth":"oops","top":0.0,"support":[]}"#,
    )
    .unwrap();
    let out = bin()
        .arg("embed-pair")
        .arg(&bad)
        .arg(fixture("demo_pair_b.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // kind D where F is required
    let d = dir.join("d.json");
    std::fs::write(&d, r#"{"kind":"D","depth":"1","support":[]}"#).unwrap();
    let out = bin()
        .arg("embed-pair")
        .arg(&d)
        .arg(fixture("demo_pair_b.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn subcone_demo_matches_frozen_fixture() {
    let out = bin().arg("subcone-demo").output().unwrap();
    assert!(out.status.success());
    let frozen = std::fs::read(fixture("subcone_demo.csv")).unwrap();
    assert_eq!(out.stdout, frozen, "subcone-demo drifted from fixture");
}

#[test]
fn convergence_grid_row_count() {
    let out = bin()
        .args(["convergence-grid", "--scales", "25,50"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let lines: Vec<&str> = stdout(&out).lines().collect();
    assert_eq!(lines.len(), 1 + 216 * 2 + 2);
    assert_eq!(lines[0], "kind,r1,r2,phi,n,limit,scaled,error");
    assert!(lines.last().unwrap().starts_with("summary,,,,50,"));
}

#[test]
fn scales_must_increase() {
    let out = bin()
        .args(["convergence-grid", "--scales", "50,25"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin()
        .args(["subcone-demo", "--scales", "0.5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join("asymtree-cli-test-out");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.csv");
    let out = bin()
        .args(["decompose", "u", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        "coefficient,level\n1,1\n"
    );
}
