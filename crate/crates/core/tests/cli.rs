//! End-to-end runs of the binary on the sample inputs in `data/`.

use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_equisos")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn reynolds_inline_and_file() {
    let out = run(&["reynolds", "--group", &data("d4.json"), "--poly", "x1^3*x2 + x1^2"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["reynolds_text"], "1/2*x1^2 + 1/2*x2^2");
    let out = run(&["reynolds", "--group", &data("d4.json"), "--poly", &data("quartic.txt"), "--format", "text"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "x1^4 + x2^4");
}

#[test]
fn invariants_and_orbitspace() {
    let out = run(&["invariants", "--group", &data("d4.json")]);
    assert_eq!(json(&out)["text"], serde_json::json!(["x1^2 + x2^2", "x1^2*x2^2"]));
    let out = run(&["orbitspace", "--group", &data("d4.json")]);
    let v = json(&out);
    assert_eq!(v["m_text"], serde_json::json!([["4*u1", "8*u2"], ["8*u2", "4*u1*u2"]]));
    assert_eq!(v["description"]["text"], serde_json::json!(["u1", "u1*u2", "u1^2*u2 - 4*u2^2"]));
    assert!(v["minors"].as_array().unwrap().iter().all(|m| m["certificate"]["residual_zero"] == true));
    let out = run(&["orbitspace", "--group", &data("reflect3.json")]);
    assert_eq!(json(&out)["description"]["text"], serde_json::json!(["u3"]));
}

#[test]
fn invariant_set_interval() {
    let out = run(&["invariant-set", "--group", &data("sign.json"), "--ineqs", &data("interval_ineqs.json")]);
    assert_eq!(json(&out)["text"], serde_json::json!([["2", "-x1^2 + 1"], ["2", "-x1^2 + 1"]]));
}

#[test]
fn sos_certificates() {
    let out = run(&["sos", "--poly", &data("quartic.txt"), "--group", &data("d4.json"), "--equivariant"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["residual_zero"], true);
    let kinds: Vec<&str> = v["squares"].as_array().unwrap().iter().map(|s| s["semi_invariant_type"].as_str().unwrap()).collect();
    assert_eq!(kinds, vec!["trivial", "sign"]);
    let out = run(&["sos", "--poly", "x1^2 - x2^2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no PSD"));
}

#[test]
fn moments_pass_and_fail() {
    let args = |m: &str| {
        run(&["moments", "check", "--group", &data("d4.json"), "--measure", &data(m), "--module", &data("strip_module.json"), "--degree", "1"])
    };
    let ok = args("d4_strip_measure.json");
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(&ok)["pass"], true);
    let bad = args("d4_outside_measure.json");
    assert_eq!(bad.status.code(), Some(1));
    let v = json(&bad);
    assert_eq!(v["checks"][2]["pass"], false);
    assert_eq!(v["checks"][2]["mode"], "exact");
    assert_eq!(v["checks"][2]["min_pivot"], "-9");
    let out = run(&[
        "moments", "check", "--group", &data("swap.json"), "--measure", &data("quadrant_measure.json"),
        "--module", &data("quadrant_preordering.json"), "--degree", "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn scenarios_and_determinism() {
    let list = json(&run(&["scenario", "list"]));
    assert!(list.as_array().unwrap().len() >= 9);
    let a = run(&["scenario", "run", "swap-quadrant", "--seed", "5"]);
    let b = run(&["scenario", "run", "swap-quadrant", "--seed", "5"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let all = run(&["scenario", "run", "--all"]);
    assert_eq!(all.status.code(), Some(0));
    assert_eq!(json(&all)["pass"], true);
    let unknown = run(&["scenario", "run", "strip"]);
    assert_eq!(unknown.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("d4-strip"));
}

#[test]
fn out_file_and_schema() {
    let path = std::env::temp_dir().join(format!("equisos-cli-{}.json", std::process::id()));
    let p = path.to_string_lossy().into_owned();
    let out = run(&["scenario", "run", "d4-strip", "--out", &p]);
    assert!(out.status.success() && out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["artifacts"], serde_json::json!([p]));
    std::fs::remove_file(&path).unwrap();

    let a = run(&["schema"]);
    assert_eq!(a.stdout, run(&["schema"]).stdout);
    assert!(json(&a)["measure"]["properties"]["atoms"].is_object());
    assert_eq!(run(&["schema", "nope"]).status.code(), Some(2));
}
