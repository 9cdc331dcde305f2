use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn gradus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gradus"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let o = gradus(&all);
    assert!(o.status.success(), "{}", stderr(&o));
    serde_json::from_str(&stdout(&o)).expect("valid JSON output")
}

#[test]
fn validates_group_ring_file() {
    let o = gradus(&["validate", &fixture("zc2.json")]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("rank 2"));
}

#[test]
fn malformed_json_is_a_parse_error() {
    let o = gradus(&["validate", &fixture("malformed.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("kind=parse"));
}

#[test]
fn non_associative_table_reports_indices() {
    let o = gradus(&["validate", &fixture("nonassoc.json")]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("kind=NotAssociative"), "{err}");
    assert!(
        err.contains("i=") && err.contains("j=") && err.contains("k="),
        "{err}"
    );
}

#[test]
fn missing_file_fails_cleanly() {
    let o = gradus(&["validate", &fixture("does-not-exist.json")]);
    assert!(!o.status.success());
    assert!(stderr(&o).starts_with("error kind="));
}

#[test]
fn analyze_reports_structure() {
    let v = json(&["analyze", "example:zxz"]);
    assert_eq!(v["rank"], 2);
    assert_eq!(v["connected"], false);
    let v = json(&["analyze", "example:zeps"]);
    assert_eq!(v["reduced"], false);
    let v = json(&["analyze", "example:zsqrt2"]);
    assert_eq!(v["connected"], true);
}

#[test]
fn grade_quadratic_and_cyclic_group_ring() {
    let v = json(&["grade", "example:zsqrt2"]);
    assert_eq!(v["group"]["invariant_factors"], serde_json::json!([2]));
    let v = json(&["grade", "example:zc3"]);
    assert_eq!(v["group"]["invariant_factors"], serde_json::json!([3]));
}

#[test]
fn grade_rejects_non_reduced_order() {
    let o = gradus(&["grade", "example:zeps"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("NotReduced"));
}

#[test]
fn grade_is_deterministic_across_seeds() {
    let a = stdout(&gradus(&[
        "--format",
        "json",
        "--seed",
        "3",
        "grade",
        "example:eisenstein-kummer",
    ]));
    let b = stdout(&gradus(&[
        "--format",
        "json",
        "--seed",
        "11",
        "grade",
        "example:eisenstein-kummer",
    ]));
    assert!(!a.is_empty());
    assert_eq!(a, b);
}

#[test]
fn units_of_cyclic_group_ring() {
    let o = gradus(&["units", "example:zc4"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("8 roots"));
}

#[test]
fn enumeration_budget_exit_code() {
    let o = gradus(&["--cap", "1", "units", "example:zc4"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("EnumerationBudgetExceeded"));
}

#[test]
fn idempotents_of_product() {
    let v = json(&["idempotents", "example:zxz"]);
    let count = v
        .as_array()
        .or_else(|| v["idempotents"].as_array())
        .map(Vec::len);
    assert_eq!(count, Some(4), "{v}");
}

#[test]
fn example_prints_parseable_order() {
    let o = gradus(&["example", "parity5"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rank"], 5);
}

#[test]
fn decompose_gram_file() {
    let v = json(&["decompose", &fixture("a2_plus_3.json")]);
    assert_eq!(v["components"].as_array().map(Vec::len), Some(2));
}

#[test]
fn decompose_generated_gram() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, r#"{{"n": 4, "gram": [["1","0","0","0"],["0","2","1","0"],["0","1","2","0"],["0","0","0","1"]]}}"#).unwrap();
    let v = json(&["decompose", f.path().to_str().unwrap()]);
    assert_eq!(v["components"].as_array().map(Vec::len), Some(3));
}

#[test]
fn ambiguous_sign_without_escalation_exits_3() {
    let path = fixture("near_orthogonal.json");
    let o = gradus(&[
        "--precision",
        "64",
        "--escalations",
        "0",
        "decompose",
        &path,
    ]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    let v = json(&["decompose", &path]);
    assert_eq!(v["components"].as_array().map(Vec::len), Some(1));
}
