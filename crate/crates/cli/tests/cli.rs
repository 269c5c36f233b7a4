use std::process::Command;

use serde_json::{json, Value};

const ELLIPTIC: &str = r#"{"model": "elliptic", "a": "0", "b": "1"}"#;

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_dixcurve")).args(args).output().expect("binary runs");
    let code = out.status.code().unwrap_or(-1);
    let text = String::from_utf8(out.stdout).unwrap();
    let value = if text.trim().is_empty() { Value::Null } else { serde_json::from_str(&text).unwrap() };
    (code, value)
}

#[test]
fn classifies_a_weyl_ideal() {
    let (code, v) = run(&["gamma", "--in", r#"["x^2", "x*d - 1"]"#]);
    assert_eq!(code, 0);
    assert_eq!(v["class"], json!("identity"));
    assert_eq!(v["n"], json!(1));
}

#[test]
fn subspace_round_trip_on_the_elliptic_curve() {
    let sub = r#"{"points": [{"point": ["0", "1"], "jet_order": 2, "conditions": [["0", "1"]]}]}"#;
    let (code, div) = run(&["div", "--curve", ELLIPTIC, "--in", sub]);
    assert_eq!(code, 0);
    assert_eq!(div["codim"], json!(1));

    let (code, ideal) = run(&["to-ideal", "--curve", ELLIPTIC, "--in", sub]);
    assert_eq!(code, 0);
    let gens = ideal["ideal"].to_string();
    let (code, back) = run(&["to-subspace", "--curve", ELLIPTIC, "--in", &gens]);
    assert_eq!(code, 0);
    let (_, div_back) = run(&["div", "--curve", ELLIPTIC, "--in", &back.to_string()]);
    assert_eq!(div_back, div);

    let (code, g) = run(&["gamma", "--curve", ELLIPTIC, "--in", &gens]);
    assert_eq!(code, 0);
    assert_eq!(g["class"], div["class"]);
}

#[test]
fn datum_acts_on_a_class() {
    let input = r#"{"datum": {"ideal": ["x", "y - 1"], "sigma": "id"}, "class": "identity"}"#;
    let (code, v) = run(&["act", "--curve", ELLIPTIC, "--in", input]);
    assert_eq!(code, 0);
    // the class of m_(0,1) is the point (0,-1)
    assert_eq!(v["class"], json!(["0", "-1"]));

    // m_(0,1)^2 has class (0,1), which the inversion sends back to (0,-1)
    let twisted = r#"{"datum": {"ideal": ["x", "y - 1"], "sigma": "nu"}, "class": ["0", "-1"]}"#;
    let (code, w) = run(&["act", "--curve", ELLIPTIC, "--in", twisted]);
    assert_eq!(code, 0);
    assert_eq!(w["class"], json!(["0", "-1"]));
}

#[test]
fn verification_groups_report_and_exit_cleanly() {
    let (code, v) = run(&["verify", "golden"]);
    assert_eq!(code, 0);
    let reports = v.as_array().unwrap();
    assert!(!reports.is_empty());
    assert!(reports.iter().all(|r| r["pass"] == json!(true)));

    let (code, v) = run(&["verify", "gamma", "--count", "2", "--curve", ELLIPTIC]);
    assert_eq!(code, 0);
    assert_eq!(v.as_array().unwrap().len(), 4);
}

#[test]
fn bad_input_is_an_error() {
    let (code, _) = run(&["gamma", "--curve", r#"{"model": "elliptic", "a": "0", "b": "0"}"#, "--in", "[]"]);
    assert_eq!(code, 125);
    let (code, _) = run(&["verify", "nonsense"]);
    assert_eq!(code, 125);
}
