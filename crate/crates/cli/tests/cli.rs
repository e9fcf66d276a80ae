use std::process::{Command, Output};

use serde_json::Value;

fn egoe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_egoe")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<f64>> {
    text.lines().skip(1).map(|l| l.split(',').map(|c| c.parse().unwrap()).collect()).collect()
}

#[test]
fn count_two_by_two_ginibre() {
    let o = egoe(&["count", "--n", "2", "--tau", "0"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("exact,asymptotic,discrepancy,mc_mean,mc_stderr,mc_z\n"));
    let rows = csv_rows(&text);
    assert!((rows[0][0] - 2f64.sqrt()).abs() < 1e-8);
}

#[test]
fn count_with_monte_carlo_is_reproducible() {
    let args = ["count", "--n", "4", "--tau", "1/2", "--mc", "300", "--seed", "5", "--format", "json"];
    let a = stdout(&egoe(&args));
    assert_eq!(a, stdout(&egoe(&args)));
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["metadata"]["params"]["seed"], 5);
    assert_eq!(v["metadata"]["params"]["mc_trials"], 300);
    let row = v["rows"][0].as_array().unwrap();
    assert!(row[5].as_f64().unwrap().abs() < 5.0);
}

#[test]
fn density_points_and_file_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.csv");
    let o = egoe(&["density", "--n", "10", "--alpha", "2/3", "--scaling", "bulk", "--points", "2", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("x,exact,leading,correction,composite,residual_scaled\n"));
    assert_eq!(text.lines().count(), 3);
    assert!(!text.contains('\r'));
}

#[test]
fn density_strong_columns() {
    let o = egoe(&["density", "--n", "80", "--tau", "5/7", "--grid=-6/5:6/5:5"]);
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0][0], -1.2);
    let r0 = (1.0 / (2.0 * std::f64::consts::PI * (1.0 - 25.0 / 49.0))).sqrt();
    for r in &rows {
        assert!((r[2] - r0).abs() < 1e-15);
        assert!((r[1] / 80f64.sqrt() - r0).abs() < 1e-3);
    }
}

#[test]
fn edge_weak_default_grid() {
    let o = egoe(&["edge", "--n", "64", "--alpha", "2/3", "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.first().unwrap()[0], -4.0);
    assert_eq!(rows.last().unwrap()[0], 4.0);
    assert_eq!(v["metadata"]["params"]["ensemble"]["scaling"], "edge");
    assert_eq!(v["columns"][5], "residual_scaled");
}

#[test]
fn sample_symmetric_has_all_real() {
    let o = egoe(&["sample", "--n", "4", "--tau", "1", "--trials", "1"]);
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 4);
    assert!(rows.windows(2).all(|w| w[0][2] <= w[1][2]));
}

#[test]
fn verify_suites() {
    let o = egoe(&["verify", "--suite", "specfun"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let o = egoe(&["verify", "--suite", "all", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["failed"], 0);
    assert_eq!(egoe(&["verify", "--suite", "nonsense"]).status.code(), Some(1));
}

#[test]
fn usage_errors_name_the_flag() {
    let o = egoe(&["density", "--n", "7", "--tau", "0.5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--n"));
    let o = egoe(&["density", "--n", "8", "--tau", "3/2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--tau"));
    let o = egoe(&["edge", "--n", "8", "--alpha", "1", "--scaling", "bulk"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--scaling"));
    assert_eq!(egoe(&["density", "--n", "8", "--tau", "1/0"]).status.code(), Some(1));
    assert_eq!(egoe(&["density", "--n", "8", "--grid", "1:0:4", "--tau", "0"]).status.code(), Some(1));
    assert_eq!(egoe(&["frobnicate"]).status.code(), Some(1));
}
