use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use amalgam_cli::VerificationReport;
use serde_json::Value;
use tempfile::TempDir;

const HAT: &str = r#"{"breakpoints":[0,1],"values":[1,0]}"#;
const CHI01: &str = r#"{"breakpoints":[0,1],"values":[1,1]}"#;
const TENT: &str = r#"{"breakpoints":[0,1,2],"values":[0,1,0]}"#;

fn amalgam(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_amalgam"))
        .args(args)
        .env_remove("AMALGAM_WORKERS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &TempDir, name: &str, contents: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn csv_rows(text: &str) -> Vec<Vec<f64>> {
    text.lines().skip(1).map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn spike_sequence_norm() {
    let v = json(&amalgam(&["norm", "--kind", "seq", "--spec", r#"{"gen":"single-spike","n":4}"#]));
    assert_eq!(v["value"], 3.0);
    assert_eq!(v["kind"], "seq");
}

#[test]
fn indicator_function_norm_from_file() {
    let dir = TempDir::new().unwrap();
    let chi = write(&dir, "chi01.json", CHI01);
    let v = json(&amalgam(&["norm", "--kind", "fun", "--spec", path(&chi), "--tol", "1e-10"]));
    let value = v["value"].as_f64().unwrap();
    assert!((value - 2.105_047_077_427_545_7).abs() < 1e-9, "{value}");
    assert!(v["tail_bound"].as_f64().unwrap() <= 1e-10);
    assert!(v["per_scale"].as_array().unwrap().len() > 10);
}

#[test]
fn wiener_norm_counts_blocks_from_one() {
    let v = json(&amalgam(&["norm", "--kind", "wiener", "--spec", TENT]));
    assert_eq!(v["value"], 0.5);
    let v = json(&amalgam(&["norm", "--kind", "wiener", "--spec", HAT]));
    assert_eq!(v["value"], 0.0);
}

#[test]
fn parse_and_usage_errors_exit_2() {
    assert_eq!(amalgam(&["norm", "--spec", "{not json"]).status.code(), Some(2));
    assert_eq!(amalgam(&["norm", "--spec", "/no/such/file.json"]).status.code(), Some(2));
    assert_eq!(amalgam(&["norm", "--spec", HAT, "--tol", "-1"]).status.code(), Some(2));
    assert_eq!(
        amalgam(&["norm", "--spec", r#"{"breakpoints":[1,0],"values":[0,0]}"#]).status.code(),
        Some(2)
    );
    let grid = amalgam(&["transform", "--kind", "cos", "--spec", HAT, "--grid", "0:1:10"]);
    assert_eq!(grid.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&grid.stderr).contains("positive"));
    assert_eq!(amalgam(&["transform", "--kind", "sin", "--spec", HAT, "--at", "-1"]).status.code(), Some(2));
    assert_eq!(amalgam(&["decompose", "--gamma", "2", "--spec", HAT]).status.code(), Some(2));
}

#[test]
fn t_transform_of_indicator_at_point() {
    let v = json(&amalgam(&["transform", "--kind", "t", "--spec", CHI01, "--at", "0.8"]));
    assert_eq!(v["kind"], "t");
    assert!((v["value"].as_f64().unwrap() - 2f64.ln()).abs() < 1e-14);
}

#[test]
fn hat_cosine_transform_at_pi() {
    let v = json(&amalgam(&["transform", "--kind", "cos", "--spec", HAT, "--at", "3.14159265"]));
    assert!((v["value"].as_f64().unwrap() - 2.0 / (PI * PI)).abs() < 1e-8);
}

#[test]
fn transform_grid_is_csv() {
    let out = amalgam(&["transform", "--kind", "hilbert", "--spec", TENT, "--grid", "0.5:4.5:5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("x,value\n"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0][0], 0.5);
    assert_eq!(rows[4][0], 4.5);
}

#[test]
fn decomposition_rows_add_up() {
    let dir = TempDir::new().unwrap();
    let estimate = dir.path().join("estimate.json");
    let out = amalgam(&[
        "decompose",
        "--gamma",
        "1",
        "--spec",
        TENT,
        "--grid",
        "0.1:100:100",
        "--l1-window",
        "0.1:100",
        "--estimate",
        path(&estimate),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("x,transform,main,remainder\n"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 100);
    for r in &rows {
        assert_eq!(r[1] - r[2], r[3]);
    }
    let est: Value = serde_json::from_str(&std::fs::read_to_string(&estimate).unwrap()).unwrap();
    let ratio = est["ratio"].as_f64().unwrap();
    assert!(ratio.is_finite() && ratio > 0.0);
    assert_eq!(est["window"], serde_json::json!([0.1, 100.0]));
}

#[test]
fn cosine_decomposition_has_no_main_term() {
    let out = amalgam(&["decompose", "--gamma", "0", "--spec", TENT, "--grid", "0.5:5:10"]);
    for r in csv_rows(&stdout(&out)) {
        assert_eq!(r[2], 0.0);
        assert_eq!(r[1], r[3]);
    }
}

#[test]
fn jump_model_violates_precondition() {
    let out = amalgam(&["decompose", "--gamma", "1", "--spec", CHI01]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("continu"));
}

#[test]
fn zero_model_decomposes_to_zeros() {
    let zero = r#"{"breakpoints":[0,1],"values":[0,0]}"#;
    let out = amalgam(&["decompose", "--gamma", "1", "--spec", zero, "--grid", "0.1:10:7"]);
    assert_eq!(out.status.code(), Some(0));
    for r in csv_rows(&stdout(&out)) {
        assert_eq!(&r[1..], &[0.0, 0.0, 0.0]);
    }
}

#[test]
fn sample_defaults_to_support() {
    let rows = csv_rows(&stdout(&amalgam(&["sample", "--spec", TENT])));
    assert_eq!(rows.len(), 101);
    assert_eq!(rows[50], vec![1.0, 1.0]);
    assert_eq!(rows[100], vec![2.0, 0.0]);
}

#[test]
fn unknown_suite_exits_2() {
    assert_eq!(amalgam(&["verify", "--suite", "no-such-claim"]).status.code(), Some(2));
}

#[test]
fn list_names_every_claim() {
    let text = stdout(&amalgam(&["verify", "--list"]));
    for id in ["tchi-l1-ln3", "eq-f2-dirichlet", "lemma-2.1-embedding", "thm-3.1-ratio", "thm-4.1-sine"] {
        assert!(text.lines().any(|l| l.starts_with(id)), "{id} missing");
    }
}

#[test]
fn single_suites_report_known_values() {
    let out = amalgam(&["verify", "--suite", "tchi-l1-ln3"]);
    let reports: Vec<VerificationReport> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(0));
    let unit = reports.iter().find(|r| r.case == "delta=1").unwrap();
    assert!((unit.lhs - 3f64.ln()).abs() < 1e-6);

    let out = amalgam(&["verify", "--suite", "eq-f2-dirichlet"]);
    let reports: Vec<VerificationReport> = serde_json::from_slice(&out.stdout).unwrap();
    let values: Vec<f64> = reports.iter().map(|r| r.lhs).collect();
    assert_eq!(values.len(), 3);
    for (v, expected) in values.iter().zip([PI / 2.0, PI / 4.0, 0.0]) {
        assert!((v - expected).abs() < 1e-4);
    }
}

#[test]
fn verify_is_deterministic_across_worker_counts() {
    let dir = TempDir::new().unwrap();
    let runs: Vec<Vec<VerificationReport>> = ["1", "3"]
        .iter()
        .map(|w| {
            let out_path = dir.path().join(format!("w{w}.json"));
            let out = amalgam(&[
                "verify",
                "--suite",
                "lemma-2.1-embedding",
                "--seed",
                "7",
                "--corpus-size",
                "12",
                "--workers",
                w,
                "--out",
                path(&out_path),
            ]);
            assert_eq!(out.status.code(), Some(0));
            assert!(stdout(&out).contains("0 failed"));
            let reports: Vec<VerificationReport> =
                serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
            reports.into_iter().map(|r| r.runtime(0)).collect()
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
}

#[test]
fn config_supplies_defaults_and_flags_override() {
    let dir = TempDir::new().unwrap();
    let config = write(&dir, "config.json", r#"{"grid": "1:2:3", "seed": 9}"#);
    let out = amalgam(&["--config", path(&config), "decompose", "--gamma", "1", "--spec", TENT]);
    assert_eq!(csv_rows(&stdout(&out)).len(), 3);
    let out =
        amalgam(&["--config", path(&config), "decompose", "--gamma", "1", "--spec", TENT, "--grid", "1:2:5"]);
    assert_eq!(csv_rows(&stdout(&out)).len(), 5);
    let bad = write(&dir, "bad.json", r#"{"colour": "red"}"#);
    assert_eq!(amalgam(&["--config", path(&bad), "verify", "--list"]).status.code(), Some(2));
}

#[test]
fn workers_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_amalgam"))
        .args(["verify", "--suite", "chi-norm"])
        .env("AMALGAM_WORKERS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_amalgam"))
        .args(["verify", "--suite", "chi-norm"])
        .env("AMALGAM_WORKERS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}
