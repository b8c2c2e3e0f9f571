use std::path::Path;
use std::process::{Command, Output};

use lsp_lab::io::{read_csv, FitDocument, SolveDocument};

fn lsp_lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lsp-lab")).args(args).output().expect("binary runs")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solve_writes_json_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let (json, svg) = (dir.path().join("s.json"), dir.path().join("s.svg"));
    let out = lsp_lab(&["solve", "--n", "6", "--json", path_str(&json), "--svg", path_str(&svg)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));

    let doc = SolveDocument::from_json(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!((doc.n, doc.vertices.len()), (6, 6));
    assert!(doc.converged);
    assert!((doc.objective - 0.674981).abs() < 1e-5);
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.contains(&format!("<desc>n=6 objective={:.10}</desc>", doc.objective)));
}

#[test]
fn solve_to_stdout() {
    let out = lsp_lab(&["solve", "--n", "4", "--model", "standard"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = SolveDocument::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert!((doc.objective - 0.5).abs() < 1e-5);
}

#[test]
fn usage_errors() {
    assert_eq!(lsp_lab(&["solve", "--n", "2"]).status.code(), Some(1));
    assert_eq!(lsp_lab(&["solve", "--n", "7", "--symmetry"]).status.code(), Some(1));
    assert_eq!(lsp_lab(&["solve", "--n", "150"]).status.code(), Some(1));
    assert_eq!(lsp_lab(&["sweep", "--even", "9..4"]).status.code(), Some(1));
    assert_eq!(lsp_lab(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(lsp_lab(&["--help"]).status.code(), Some(0));
}

#[test]
fn unconverged_solve_exits_two() {
    let out = lsp_lab(&["solve", "--n", "12", "--tol", "1e-30"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_then_fit() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("even.csv");
    let out = lsp_lab(&["--workers", "2", "sweep", "--even", "4..20", "--csv", path_str(&csv)]);
    assert_eq!(out.status.code(), Some(0));
    let records = read_csv(&csv).unwrap();
    assert_eq!(records.len(), 9);
    assert_eq!(records[0].n, 4);

    let fit_json = dir.path().join("fit.json");
    let out = lsp_lab(&["fit", "--csv", path_str(&csv), "--parity", "even", "--json", path_str(&fit_json)]);
    assert_eq!(out.status.code(), Some(0));
    let doc = FitDocument::from_json(&std::fs::read_to_string(&fit_json).unwrap()).unwrap();
    assert_eq!((doc.n_min, doc.n_max, doc.points), (4, 20, 9));

    let mixed = dir.path().join("mixed.csv");
    assert_eq!(lsp_lab(&["sweep", "--ns", "4,5,6,8", "--csv", path_str(&mixed)]).status.code(), Some(0));
    assert_eq!(lsp_lab(&["fit", "--csv", path_str(&mixed), "--parity", "even"]).status.code(), Some(1));
}

#[test]
fn compare_and_random_tables() {
    let out = lsp_lab(&["compare", "--ns", "4,6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.starts_with("n,tightened_objective,standard_objective"));

    let out = lsp_lab(&["random", "--n", "5", "--seed", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 6);
    assert!(text.contains("random:2") && text.contains("random:6"));
}
