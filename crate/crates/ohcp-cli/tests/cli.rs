use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ohcp(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ohcp")).args(args).current_dir(dir).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn with_fixtures() -> tempfile::TempDir {
    let tmp = tempfile::tempdir().unwrap();
    let out = ohcp(&["fixtures", "."], tmp.path());
    assert_eq!(out.status.code(), Some(0));
    tmp
}

#[test]
fn parse_errors_name_file_line_and_token() {
    let tmp = tempfile::tempdir().unwrap();
    fs::write(tmp.path().join("bad.complex"), "0 1 2\n1 2 x\n").unwrap();
    let out = ohcp(&["homology", "bad.complex"], tmp.path());
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad.complex:2:"), "{err}");
    assert!(err.contains("`x`"), "{err}");
}

#[test]
fn missing_file_is_an_input_error() {
    let tmp = tempfile::tempdir().unwrap();
    let out = ohcp(&["tu", "nope.complex"], tmp.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn homology_of_fixtures() {
    let tmp = with_fixtures();
    let r = json(&ohcp(&["homology", "rp2.complex"], tmp.path()));
    assert_eq!(r["result"]["homology"]["betti"], 0);
    assert_eq!(r["result"]["homology"]["torsion"], serde_json::json!(["2"]));
    assert_eq!(r["result"]["euler_characteristic"], 1);
    let r = json(&ohcp(&["homology", "mobius5.complex"], tmp.path()));
    assert_eq!(r["result"]["homology"]["betti"], 1);
    let r = json(&ohcp(&["homology", "tetrahedron.complex", "--p", "2"], tmp.path()));
    assert_eq!(r["result"]["homology"]["betti"], 1);
}

#[test]
fn solve_reports_exact_optima() {
    let tmp = with_fixtures();
    let out = ohcp(&["solve", "square.complex", "square.chain", "--weights", "square.weights", "--oracle"], tmp.path());
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["result"]["objective"], "2");
    assert_eq!(r["result"]["oracle"]["agrees"], true);
    let r = json(&ohcp(&["solve", "mobius5.complex", "mobius5.chain", "--weights", "mobius5.weights", "--oracle"], tmp.path()));
    assert_eq!(r["result"]["objective"], "1/8");
    assert_eq!(r["result"]["solution"]["integral"], false);
    assert_eq!(r["result"]["optimal_vertices"]["count"], 1);
    let r = json(&ohcp(&["solve", "mobius5.complex", "mobius5.chain", "--uniform-weight", "1"], tmp.path()));
    assert_eq!(r["config"]["uniform_weight"], "1");
}

#[test]
fn conflicting_weight_flags_are_rejected() {
    let tmp = with_fixtures();
    let out = ohcp(
        &["solve", "square.complex", "square.chain", "--weights", "square.weights", "--uniform-weight", "2"],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tu_and_oracle() {
    let tmp = with_fixtures();
    let r = json(&ohcp(&["tu", "mobius5.complex", "--oracle"], tmp.path()));
    assert_eq!(r["result"]["totally_unimodular"], false);
    assert_eq!(r["result"]["mntus"].as_array().unwrap().len(), 1);
    assert_eq!(r["result"]["oracle"]["agrees"], true);
    let r = json(&ohcp(&["tu", "square.complex", "--oracle"], tmp.path()));
    assert_eq!(r["result"]["totally_unimodular"], true);
}

#[test]
fn small_budget_exits_three_with_a_report() {
    let tmp = with_fixtures();
    let out = ohcp(&["tu", "filled-core.complex", "--budget", "1"], tmp.path());
    assert_eq!(out.status.code(), Some(3));
    let r = json(&out);
    assert_eq!(r["result"]["search_complete"], false);
}

#[test]
fn mobius_is_not_neutralized() {
    let tmp = with_fixtures();
    let out = ohcp(&["neutralization", "mobius5.complex", "--radius", "1"], tmp.path());
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["result"]["verdict"], "no");
    assert_eq!(r["result"]["projection"]["verdict"], "no");
    let r = json(&ohcp(&["neutralization", "square.complex"], tmp.path()));
    assert_eq!(r["result"]["verdict"], "yes (vacuous)");
}

#[test]
fn out_flag_writes_the_report() {
    let tmp = with_fixtures();
    let out = ohcp(&["homology", "square.complex", "--out", "h.json"], tmp.path());
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = fs::read_to_string(tmp.path().join("h.json")).unwrap();
    assert!(text.ends_with("}\n"));
}

#[test]
fn fixtures_verify_passes() {
    let tmp = tempfile::tempdir().unwrap();
    let out = ohcp(&["fixtures", "fx", "--verify"], tmp.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = json(&out);
    for v in r["result"]["verification"].as_array().unwrap() {
        assert_eq!(v["passed"], true, "{v}");
    }
}
