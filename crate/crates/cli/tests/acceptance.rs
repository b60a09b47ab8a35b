//! CLI acceptance checks: byte determinism, JSON round-trip through the
//! binary, exit codes, and file output.

use std::process::{Command, Output};

use strata_core::report;

fn strata(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_strata"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn criterion_9_byte_identical_reruns() {
    for format in ["json", "text", "dot"] {
        let args = [
            "report", "--genus", "11", "--maroni", "3", "--degree", "0", "--format", format,
        ];
        let first = strata(&args);
        let second = strata(&args);
        assert!(first.status.success());
        assert_eq!(first.stdout, second.stdout, "format {format}");
        assert!(!first.stdout.is_empty());
    }
    println!("criterion 9 (CLI byte determinism): PASS");
}

#[test]
fn criterion_9_json_round_trip_through_binary() {
    let out = strata(&[
        "report", "--genus", "11", "--maroni", "3", "--degree", "0", "--format", "json",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let doc = report::parse_document(&text).unwrap();
    assert_eq!(report::emit_json(&doc), text);

    // Spot-check the worked-example payload.
    assert_eq!(doc.context.genus, 11);
    let anomalous_curve = doc.strata.iter().find(|s| s.e == vec![-8, -4, -1]).unwrap();
    assert_eq!(anomalous_curve.open.dim, Some(1));
    assert_eq!(anomalous_curve.open.components.as_deref(), Some("3"));
    assert!(anomalous_curve.anomalous);
    let forced_empty = doc.strata.iter().find(|s| s.e == vec![-7, -6, 0]).unwrap();
    assert_eq!(
        forced_empty.open.status,
        strata_core::theory::OpenStatus::Empty
    );
    println!("criterion 9 (CLI JSON round-trip): PASS");
}

#[test]
fn validation_failures_exit_2() {
    let out = strata(&["report", "--genus", "11", "--maroni", "4", "--degree", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(
        stderr.contains("g = n (mod 2)"),
        "names the violated rule: {stderr}"
    );

    let out = strata(&["report", "--genus", "3", "--maroni", "3", "--degree", "0"]);
    assert_eq!(out.status.code(), Some(2));

    // Unknown flags are validation failures too (clap's default).
    let out = strata(&["report", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oracle_check_passes_and_detects_injected_fault() {
    let out = strata(&["oracle-check", "--max-genus", "12"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("0 failures"));
    assert!(stdout.trim_end().ends_with("PASS"));

    let out = strata(&[
        "oracle-check",
        "--max-genus",
        "12",
        "--inject-fault",
        "m-window",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("FAIL"));

    // Nearly vacuous range: almost no two-condition strata exist yet.
    let out = strata(&["oracle-check", "--max-genus", "4"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn classify_single_stratum() {
    let out = strata(&[
        "classify", "--genus", "6", "--maroni", "0", "--type", " -4,0,0",
    ]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("flavor:             II"));
    assert!(stdout.contains("point (dim 0)"));

    // The degree is implied by the type: a + b + c + g + 2 = 4.
    assert!(stdout.contains("Pic^4"));

    let out = strata(&[
        "classify",
        "--genus",
        "6",
        "--maroni",
        "0",
        "--type",
        "not-a-type",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn display_flags_filter_the_report() {
    let base = strata(&[
        "report", "--genus", "11", "--maroni", "3", "--degree", "0", "--format", "json",
    ]);
    let doc = report::parse_document(&String::from_utf8(base.stdout).unwrap()).unwrap();

    let trimmed = strata(&[
        "report",
        "--genus",
        "11",
        "--maroni",
        "3",
        "--degree",
        "0",
        "--format",
        "json",
        "--min-dim",
        "3",
    ]);
    let trimmed_doc = report::parse_document(&String::from_utf8(trimmed.stdout).unwrap()).unwrap();
    assert!(trimmed_doc.strata.len() < doc.strata.len());

    let full = strata(&[
        "report",
        "--genus",
        "11",
        "--maroni",
        "3",
        "--degree",
        "0",
        "--format",
        "json",
        "--include-empty",
    ]);
    let full_doc = report::parse_document(&String::from_utf8(full.stdout).unwrap()).unwrap();
    assert!(full_doc.strata.len() > doc.strata.len());

    // A tight spread bound shrinks the enumerated universe.
    let narrow = strata(&[
        "report",
        "--genus",
        "11",
        "--maroni",
        "3",
        "--degree",
        "0",
        "--format",
        "json",
        "--spread-bound",
        "5",
    ]);
    let narrow_doc = report::parse_document(&String::from_utf8(narrow.stdout).unwrap()).unwrap();
    assert!(narrow_doc.strata.len() < doc.strata.len());
}

#[test]
fn out_flag_writes_the_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let args = [
        "report", "--genus", "11", "--maroni", "3", "--degree", "0", "--format", "json",
    ];
    let stdout_run = strata(&args);
    let file_run = strata(&[&args[..], &["--out", path.to_str().unwrap()]].concat());
    assert!(file_run.status.success());
    assert!(file_run.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), stdout_run.stdout);
}
