use std::process::{Command, Output};

use serde_json::Value;

fn triality(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_triality")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = triality(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&stdout(&out)).expect("valid json")
}

#[test]
fn expand_delta() {
    let out = triality(&["expand", "Delta", "--order", "4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "Delta = q - 24*q^2 + 252*q^3 + O(q^4)");
    let v = json(&["expand", "Delta", "--order", "4"]);
    assert_eq!(v["lattice_denominator"], 24);
    assert_eq!(v["terms"][0][0], 24);
    assert_eq!(v["terms"][1][1], "-24/1");
    assert_eq!(v["grading"]["weight"], 12);
}

#[test]
fn expand_b1_is_an_invariant_of_degree_two() {
    let v = json(&["expand", "b1", "--order", "4"]);
    assert_eq!(v["kind"], "invariant");
    assert_eq!(v["grading"]["weight"], 8);
    assert_eq!(v["grading"]["degree"], 2);
    assert_eq!(v["terms"].as_array().unwrap().len(), 1);
    assert_eq!(v["terms"][0]["monomial"], serde_json::json!([1, 0, 0, 0]));
}

#[test]
fn unknown_name_is_a_usage_error() {
    let out = triality(&["expand", "nosuch"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("nosuch") && err.contains("theta3"), "{err}");
}

#[test]
fn basis_examples() {
    let v = json(&["basis", "--weight", "12", "--degree", "2"]);
    assert_eq!(v["dimension"], 1);
    assert_eq!(v["basis"][0]["terms"][0], serde_json::json!([[1, 0, 0, 1, 0, 0], "1/1"]));
    assert_eq!(json(&["basis", "--weight", "10", "--degree", "4"])["dimension"], 0);
    assert_eq!(json(&["basis", "--weight", "12", "--degree", "0"])["dimension"], 2);
}

#[test]
fn dims_table() {
    let v = json(&["dims", "--kmax", "12", "--mmax", "2"]);
    assert_eq!(v["weights"], serde_json::json!([0, 2, 4, 6, 8, 10, 12]));
    assert_eq!(v["rows"][1]["dims"], serde_json::json!([0, 0, 0, 0, 0, 0, 1]));
    let text = stdout(&triality(&["dims", "--kmax", "12", "--mmax", "2"]));
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn generators_listing() {
    let v = json(&["generators"]);
    assert_eq!(v["count"], 15);
    let cell = v["generators"].as_array().unwrap().iter().find(|g| g["label"] == "<1,1>_{4,1}").unwrap();
    assert_eq!(cell["expression"], "<f,g>^2");
    let out = triality(&["generators", "--json"]);
    assert_eq!(stdout(&out), serde_json::to_string(&v).unwrap() + "\n");
}

#[test]
fn transvect_forms() {
    let out = triality(&["transvect", "--left", "f", "--right", "f", "--index", "2"]);
    assert_eq!(stdout(&out).trim(), "2*alpha0*alpha2 - 1/2*alpha1^2");
    let bad = triality(&["transvect", "--left", "f", "--right", "g", "--index", "3"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn membership_reports() {
    let v = json(&["membership", "a0*b1", "--order", "4"]);
    assert_eq!(v["triality_invariant"], true);
    assert_eq!(v["classification"], "invariant");
    assert_eq!(json(&["membership", "b1"])["triality_invariant"], false);
}

#[test]
fn verify_suites() {
    let out = triality(&["verify", "table1", "--order", "6"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).lines().all(|l| !l.starts_with("FAIL")));
    let bad = triality(&["verify", "nosuch"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let a = triality(&["verify", "all", "--format", "json"]);
    let b = triality(&["verify", "all", "--format", "json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn order_below_two_is_rejected() {
    assert_eq!(triality(&["expand", "E4", "--order", "1"]).status.code(), Some(2));
}
