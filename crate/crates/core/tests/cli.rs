use std::process::Command;

use montesinos::classify::{ClassificationReport, FinalVerdict};
use montesinos::grid::Cell;

fn montesinos(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_montesinos"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn classify_report_round_trips() {
    let (code, out, _) = montesinos(&["classify", "-2,3,7", "--json"]);
    assert_eq!(code, 0);
    let report: ClassificationReport = serde_json::from_str(&out).unwrap();
    assert_eq!(serde_json::to_string(&report).unwrap(), out.trim());
    assert_eq!(
        report.final_verdict,
        vec![
            FinalVerdict::CyclicSlopes(vec![18, 19]),
            FinalVerdict::FiniteSlopes(vec![17])
        ]
    );
    assert!(report
        .stages
        .iter()
        .all(|s| !s.citation.reference().is_empty()));
}

#[test]
fn classify_text_and_rational_input() {
    let (code, out, _) = montesinos(&["classify", "M(-1/2;1/3;1/9)"]);
    assert_eq!(code, 0);
    assert!(out.contains("FINITE_SLOPES[22,23]"), "{out}");
}

#[test]
fn claim5_suite_all_minus_two() {
    let (code, out, _) = montesinos(&[
        "verify-claims",
        "--suite",
        "claim5",
        "--pmax",
        "13",
        "--json",
    ]);
    assert_eq!(code, 0);
    let cells: Vec<Cell> = out
        .lines()
        .filter(|l| l.contains("\"params\""))
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(cells.len(), 15);
    assert!(cells.iter().all(|c| c.observed == "-2"));
    let mut sorted = cells.clone();
    sorted.sort_by(|a, b| a.params.cmp(&b.params));
    assert_eq!(sorted, cells);
}

#[test]
fn obstruct_reports_fields() {
    let (code, out, _) = montesinos(&["obstruct", "-1,-1,4,3,3", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["monic"], false);
    assert_eq!(v["pm1"], false);
    assert_eq!(v["fiberedness"]["verdict"], "NOT_FIBERED");

    let (_, out, _) = montesinos(&["obstruct", "-2,3,7"]);
    assert!(out.contains("os-form: yes, k=4"), "{out}");
}

#[test]
fn exit_codes() {
    assert_eq!(montesinos(&["alexander", "-2,3,x"]).0, 1);
    assert_eq!(montesinos(&["classify", "2,2"]).0, 1);
    assert_eq!(montesinos(&["nonsense"]).0, 1);
    let (code, out, _) = montesinos(&["oracle-compare", "grid:2:5"]);
    assert_eq!(code, 0);
    assert!(out.contains("0 failed"));
}
