use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn deephole(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_deephole")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn fixture(text: &str) -> tempfile::NamedTempFile {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(text.as_bytes()).unwrap();
    file
}

#[test]
fn verify_agrees_on_rs_code() {
    let out = deephole(&["verify", "--p", "7", "--k", "3", "--eval", "0,1,2,3,4,5"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["agree"], true);
    assert_eq!(r["bruteforce"]["count"], 2);
    assert_eq!(r["theorem"]["count"], 2);
}

#[test]
fn full_line_radius() {
    let out = deephole(&["radius", "--p", "2", "--h", "2", "--k", "2", "--full-line"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["covering_radius"], 3);
}

#[test]
fn arc_counts() {
    let out = deephole(&["arcs", "count", "--p", "2", "--h", "2", "--n", "5", "--family", "M1", "--enumerate"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["counts"]["closed_form"], 120);
    assert_eq!(r["counts"]["enumerated"], 120);
    assert_eq!(r["arc_pairs"]["enumerated"], 2);
}

#[test]
fn fixtures() {
    let good = fixture(r#"{"field": {"p": 7}, "k": 3, "eval": [0, 1, 2, 3, 4]}"#);
    let out = deephole(&["code", "build", "--fixture", good.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["parity"].as_array().unwrap().len(), 2);

    let dup = fixture(r#"{"field": {"p": 7}, "k": 3, "eval": [0, 1, 2, 2, 4]}"#);
    let out = deephole(&["code", "build", "--fixture", dup.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("duplicate"));

    let bad = fixture(r#"{"field": {"p": 5}, "k": 2, "eval": [0, 1, 2, 3], "matrix": [[1, 1, 1, 1], [0, 1, 2, 4]]}"#);
    let out = deephole(&["code", "mds-check", "--fixture", bad.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("integrity"));
}

#[test]
fn exit_codes() {
    assert_eq!(deephole(&["radius", "--k", "2"]).status.code(), Some(2));
    assert_eq!(deephole(&["nonsense"]).status.code(), Some(2));
    assert_eq!(deephole(&["radius", "--p", "13", "--k", "2", "--budget", "1000"]).status.code(), Some(3));
    assert_eq!(deephole(&["deephole", "predict", "--p", "13", "--k", "2", "--n", "6"]).status.code(), Some(2));
}

#[test]
fn sampled_output_is_deterministic() {
    let args = ["red3", "verify", "--p", "7", "--k", "2", "--samples", "5", "--seed", "11"];
    let one = deephole(&[&args[..], &["--workers", "1"]].concat());
    let two = deephole(&[&args[..], &["--workers", "2"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, two.stdout);
    let r = json(&one);
    assert_eq!(r["seed"], 11);
    assert_eq!(r["cases"].as_array().unwrap().len(), 5);
}

#[test]
fn csv_class_table() {
    let out = deephole(&["deephole", "enumerate", "--p", "5", "--k", "3", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "method,syndrome,witness,delta\nbruteforce,(0:1),rnc,inf\n");
}

#[test]
fn canonical_form_of_an_extension() {
    // over GF(7) the point (0:1:0) lies in O2; no two of 0, 1, 2, 3 are opposite
    let out = deephole(&["arcs", "canonical", "--p", "7", "--eval", "0,1,2,3,inf", "--column", "0,1,0"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["canonical"]["family"], "M1");
    assert_eq!(r["canonical"]["matrix"].as_array().unwrap()[1].as_array().unwrap().len(), 6);
}

#[test]
fn orbit_report() {
    let out = deephole(&["orbits", "decompose", "--p", "5"]);
    let r = json(&out);
    assert_eq!(r["orbit_sizes"]["o2"], 15);
    assert_eq!(r["orbit_sizes"]["o3"], 10);
    assert_eq!(r["total"], 31);
    assert_eq!(r["stabilizer_orders"]["O3"], 12);
}

#[test]
fn conjecture_exception_is_reported() {
    let out = deephole(&["conjecture", "check", "--p", "2", "--h", "2", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["results"][0]["known_exception"], true);
    assert_eq!(r["results"][0]["holds"], false);
}

#[test]
fn hyperovals_match_enumeration() {
    let out = deephole(&["hyperoval", "classes", "--p", "2", "--h", "3", "--enumerate"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["count"], r["enumerated"]);
}

#[test]
fn rnc_completeness() {
    let r = json(&deephole(&["rnc", "complete", "--p", "2", "--h", "2", "--m", "3"]));
    assert_eq!(r["complete"], false);
    assert_eq!(r["extenders"], serde_json::json!([[0, 1, 0]]));
}
