//! End-to-end runs of the `alexinv` binary.

use std::io::Write;
use std::process::Command;

fn alexinv(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_alexinv")).args(args).output().expect("binary runs")
}

#[test]
fn single_check_emits_one_json_report() {
    let out = alexinv(&["fox-relator", "--g", "3", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0]["id"], "fox-relator");
    assert_eq!(reports[0]["pass"], true);
    assert_eq!(reports[0]["expected"]["provenance"], "PAPER");
}

#[test]
fn failing_check_exits_nonzero() {
    // a word outside the commutator subgroup has no Alexander class
    let out = alexinv(&["a-valuation", "--g", "2", "--word", "a1", "--json"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn out_of_budget_requests_are_refused() {
    let out = alexinv(&["graded-dim", "--g", "4", "--n", "4", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v[0]["out_of_budget"], true);
}

#[test]
fn malformed_config_exits_with_2() {
    let mut f = tempfile();
    writeln!(f.1, "genera = \"two\"").unwrap();
    let out = alexinv(&["verify-all", "--config", f.0.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "config");
    drop(f.1);
    std::fs::remove_file(&f.0).ok();
}

#[test]
fn restricted_config_skips_and_passes() {
    let mut f = tempfile();
    writeln!(f.1, "genera = [2]\nmax_degree = 1").unwrap();
    let out = alexinv(&["verify-all", "--config", f.0.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let reports = v.as_array().unwrap();
    assert!(reports.iter().any(|r| r["status"] == "skipped"));
    assert!(reports.iter().all(|r| r["status"] != "fail" && r["status"] != "error"));
    std::fs::remove_file(&f.0).ok();
}

fn tempfile() -> (std::path::PathBuf, std::fs::File) {
    use std::sync::atomic::{AtomicUsize, Ordering};
    static N: AtomicUsize = AtomicUsize::new(0);
    let path = std::env::temp_dir().join(format!(
        "alexinv-cli-{}-{}.toml",
        std::process::id(),
        N.fetch_add(1, Ordering::SeqCst)
    ));
    let file = std::fs::File::create(&path).unwrap();
    (path, file)
}
