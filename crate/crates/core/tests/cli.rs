//! Exit codes and outputs of the `envelope` binary.

use std::fs;
use std::process::{Command, Output};

use envelope_core::io::{parse_csv, read_csv, CSV_HEADER};

fn envelope(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_envelope")).args(args).output().unwrap()
}

fn code(args: &[&str]) -> Option<i32> {
    envelope(args).status.code()
}

#[test]
fn compare_passes_and_reports_every_method() {
    let out = envelope(&["compare", "--n", "64"]);
    assert_eq!(out.status.code(), Some(0));
    let report = String::from_utf8(out.stdout).unwrap();
    for method in ["classical", "radial", "limit", "projection"] {
        assert!(report.contains(method), "{report}");
    }
    assert!(report.trim_end().ends_with("overall: pass"));
}

#[test]
fn unattainable_tolerance_exits_one() {
    assert_eq!(code(&["compare", "--n", "64", "--tol", "1e-18"]), Some(1));
    assert_eq!(code(&["envelope", "--method", "limit", "--tol", "1e-20"]), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&["envelope", "--bogus"]), Some(2));
    assert_eq!(code(&["frobnicate"]), Some(2));
    assert_eq!(code(&["envelope", "--family", "fe", "--method", "radial"]), Some(2));
    assert_eq!(code(&["compare", "--n", "3"]), Some(2));
    assert_eq!(code(&["envelope", "--csv", "--svg"]), Some(2));
}

#[test]
fn unwritable_output_exits_three() {
    assert_eq!(
        code(&["envelope", "--out", "/nonexistent-dir/inner/e.csv"]),
        Some(3)
    );
}

#[test]
fn envelope_csv_on_stdout_revalidates() {
    let out = envelope(&["envelope", "--method", "radial", "--n", "64"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some(CSV_HEADER));
    let table = parse_csv(&text, "stdout").unwrap();
    assert_eq!(table.len(), 64);
    table.validate_membership().unwrap();
    assert!(table.rows.iter().all(|r| r.method == "radial"));
}

#[test]
fn files_are_written_in_the_requested_format() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("family.csv");
    let svg = dir.path().join("family.svg");
    assert!(envelope(&["render-family", "--n", "7", "--points", "16", "--out", csv.to_str().unwrap()])
        .status
        .success());
    assert!(envelope(&["render-family", "--family", "fe", "--out", svg.to_str().unwrap()])
        .status
        .success());

    let table = read_csv(&csv).unwrap();
    assert_eq!(table.len(), 7 * 16);
    let text = fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg") || text.starts_with("<?xml"));
    assert!(text.trim_end().ends_with("</svg>"));
}

#[test]
fn isocline_and_project_run() {
    for args in [&["isocline", "--family", "fe"][..], &["project", "--n", "5"][..]] {
        let out = envelope(args);
        assert!(out.status.success(), "{args:?}");
        assert!(!out.stdout.is_empty());
    }
}
