use std::path::Path;
use std::process::Command;

use splitrel::cli::run_with;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("splitrel").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn balloon_document_and_coefficients() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.json");
    let (code, _, _) = run(&["balloon", "9", "15", "--out", path_str(&g)]);
    assert_eq!(code, 0);
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&g).unwrap()).unwrap();
    assert_eq!(doc["n"], 9);
    assert_eq!(doc["edges"].as_array().unwrap().len(), 15);
    // a plain balloon carries no terminals
    assert_eq!(run(&["sr-coeffs", path_str(&g)]).0, 1);

    let gt = dir.path().join("gt.json");
    assert_eq!(
        run(&["two-terminal-balloon", "9", "15", "--out", path_str(&gt)]).0,
        0
    );
    let (code, csv, _) = run(&["sr-coeffs", path_str(&gt), "--format", "csv"]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows[0], "i,N_i,F_i");
    assert_eq!(rows[3], "2,0,37");
    assert_eq!(rows[4], "3,0,205");
    let (code, json, _) = run(&["sr-coeffs", path_str(&gt)]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["f_counts"][1], "3");
}

#[test]
fn evaluation_and_tree_counts() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("k4.json");
    std::fs::write(
        &g,
        r#"{"n":4,"edges":[[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]],"terminals":[0,1]}"#,
    )
    .unwrap();
    let (code, out, _) = run(&["trees", path_str(&g)]);
    assert_eq!(code, 0);
    assert!(out.contains("\"16\""));
    let (code, out, _) = run(&["sr-eval", path_str(&g), "1/2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["sr"].as_str().unwrap().contains('/'));
    assert_eq!(run(&["sr-eval", path_str(&g), "3/2"]).0, 1);
    let (code, out, _) = run(&["t2", path_str(&g)]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["two_trees"], v["swept"]);
}

#[test]
fn uniform_check_reports_none_for_six_eight() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let (code, out, _) = run(&["uniform-check", "6", "8", "--cache", path_str(&cache)]);
    assert_eq!(code, 0);
    assert!(out.starts_with("NONE\n"));
    assert!(out.contains("\"witness\""));
    assert!(std::fs::read_dir(&cache).unwrap().count() > 0);
    let (code, again, _) = run(&["uniform-check", "6", "8", "--cache", path_str(&cache)]);
    assert_eq!((code, again), (0, out));
    let (code, out, _) = run(&["uniform-check", "6", "7"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("WINNER\n"));
}

#[test]
fn outputs_do_not_depend_on_jobs() {
    for args in [
        &["refine", "6", "9", "--format", "csv"][..],
        &["enumerate", "6", "7", "--two-terminal"],
        &["locally-most", "6", "10"],
        &[
            "mc-estimate",
            "PLACEHOLDER",
            "1/3",
            "--trials",
            "50000",
            "--seed",
            "7",
        ],
    ] {
        let dir = tempfile::tempdir().unwrap();
        let g = dir.path().join("g.json");
        run(&["two-terminal-balloon", "6", "9", "--out", path_str(&g)]);
        let args: Vec<&str> = args
            .iter()
            .map(|a| if *a == "PLACEHOLDER" { path_str(&g) } else { a })
            .collect();
        let one = run(&[&args[..], &["--jobs", "1"]].concat());
        let four = run(&[&args[..], &["--jobs", "4"]].concat());
        assert_eq!(one.0, 0, "{args:?}: {}", one.2);
        assert_eq!(one, four, "{args:?}");
    }
}

#[test]
fn verify_reports_and_exit_codes() {
    let (code, out, err) = run(&["verify", "lemma15"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "discrepancy");
    assert!(err.starts_with("DISCREPANCY lemma15"));
    let (code, out, _) = run(&["verify", "bogdanowicz"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"pass\""));
    assert_eq!(run(&["verify", "thm9"]).0, 1);
}

#[test]
fn validation_and_guard_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"n":2,"edges":[[0,5]],"terminals":[0,1]}"#).unwrap();
    assert_eq!(run(&["sr-coeffs", path_str(&bad)]).0, 1);
    assert_eq!(run(&["balloon", "3", "9"]).0, 1);
    assert_eq!(run(&["no-such-command"]).0, 1);
    assert_eq!(run(&["variant", "3", "9", "15"]).0, 1);
    assert_eq!(run(&["enumerate", "8", "9"]).0, 2);
    let g = dir.path().join("g.json");
    run(&["two-terminal-balloon", "9", "15", "--out", path_str(&g)]);
    assert_eq!(run(&["sr-coeffs", path_str(&g), "--guard-bits", "10"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_splitrel");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let ok = status(&["threshold", "6", "3", "2"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("\"edges\""));
    assert_eq!(status(&["enumerate", "8", "9"]).status.code(), Some(2));
    assert_eq!(status(&["balloon", "2"]).status.code(), Some(1));
}
