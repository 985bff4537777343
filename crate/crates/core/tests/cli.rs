use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use linweb::ratlin::RatMatrix;
use linweb::web::ClosedFormEquations;

fn linweb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linweb"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn analyze_first_example() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "a1.json", "[[1,1,0],[1,1,1],[1,2,1]]");
    let out = linweb(&["analyze", &f]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("not AGW"));
    assert!(text.contains("Parallelizable"));
    assert!(text.contains("x-block [2, 3, 6]"));

    let out = linweb(&["analyze", &f, "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["agw"]["verdict"], "not-agw");
    assert_eq!(v["rank"]["dimension"], 1);
}

#[test]
fn analyze_accepts_csv_and_wrapped_json() {
    let dir = tempfile::tempdir().unwrap();
    let csv = write(dir.path(), "a.csv", "1,1,0\n0,1,1\n1,1,1\n");
    let obj = write(
        dir.path(),
        "a.json",
        r#"{"n": 3, "A": [[1,1,0],[0,1,1],["1","1","1"]]}"#,
    );
    let a = linweb(&["analyze", &csv, "--json"]);
    let b = linweb(&["analyze", &obj, "--json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn identity_reports_audit_failure() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "id.json", "[[1,0,0],[0,1,0],[0,0,1]]");
    let out = linweb(&["analyze", &f]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("general position: NO"));
}

#[test]
fn user_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let singular = write(dir.path(), "s.json", "[[1,1],[1,1]]");
    let ragged = write(dir.path(), "r.json", "[[1,1],[1]]");
    let garbage = write(dir.path(), "g.csv", "1, two\n3, 4\n");
    for args in [
        vec!["analyze", singular.as_str()],
        vec!["analyze", ragged.as_str()],
        vec!["analyze", garbage.as_str()],
        vec!["analyze", "/nonexistent/file.json"],
        vec!["closed-form", singular.as_str()],
        vec!["survey", "--count", "0"],
        vec!["survey", "--family", "B9", "--count", "3"],
        vec!["survey", "--family", "B6", "--n", "4", "--count", "3"],
        vec!["frobnicate"],
    ] {
        let out = linweb(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn verify_paper_exits_0_and_reports_mismatches() {
    let out = linweb(&["verify-paper"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS     ex1.closed-form.printed"));
    assert!(text.contains("MISMATCH ex1.literal-det"));
    assert!(text.contains("derived checks: all pass"));

    let out = linweb(&["verify-paper", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["derived_ok"], true);
}

#[test]
fn survey_json_is_byte_identical_across_runs_and_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let common = [
        "survey", "--family", "generic", "--n", "3", "--count", "40", "--seed", "7", "--json",
    ];
    let mut args_a = common.to_vec();
    args_a.extend(["--jobs", "1", "--out", a.to_str().unwrap()]);
    let mut args_b = common.to_vec();
    args_b.extend(["--jobs", "3", "--out", b.to_str().unwrap()]);
    assert_eq!(linweb(&args_a).status.code(), Some(0));
    assert_eq!(linweb(&args_b).status.code(), Some(0));
    let (ja, jb) = (fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert!(!ja.is_empty());
    assert_eq!(ja, jb);
    let v: serde_json::Value = serde_json::from_slice(&ja).unwrap();
    assert_eq!(v["samples"], 40);
}

#[test]
fn family_survey_respects_constraints() {
    let out = linweb(&[
        "survey", "--family", "B6", "--count", "30", "--seed", "1", "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["family"], "B6");
    let parts = ["not_agw", "agw", "indeterminate"]
        .iter()
        .map(|k| v[k].as_u64().unwrap())
        .sum::<u64>();
    assert_eq!(parts, 30);
}

#[test]
fn closed_form_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "a3.json", "[[1,1,0],[0,1,1],[1,0,1]]");
    let out_file = dir.path().join("eqs.txt");
    let out = linweb(&["closed-form", &f, "--out", out_file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&out_file).unwrap();
    assert!(text.contains("y_4 = 1/2 (-y_1 + y_2 - y_3)"));
    let (a, b) = ClosedFormEquations::parse_text(&text)
        .unwrap()
        .matrices()
        .unwrap();
    let expected = RatMatrix::from_ints(&[[1, 1, 0], [0, 1, 1], [1, 0, 1]]);
    assert_eq!(a, expected);
    assert_eq!(b, expected.inverse().unwrap());

    let json = linweb(&["closed-form", &f, "--json"]);
    let parsed: ClosedFormEquations = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(parsed.render_text(), text);
}
