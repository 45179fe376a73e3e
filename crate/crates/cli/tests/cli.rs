use std::path::PathBuf;
use std::process::{Command, Output};

fn filtra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_filtra")).args(args).output().expect("binary runs")
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("filtra-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

const RING: &str = "field GF(32003)\nvars x, y, z\nideal I = x^2, x*y\nideal q = x, y, z\nfiltration F = adic(q) mod I\n";

#[test]
fn example_with_hilbert_numerator() {
    let out = filtra(&["example", "3.6", "--json", "-"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["tool"], "filtra");
    assert_eq!(v["input"]["fingerprint"].as_str().unwrap().len(), 64);
    let hilbert = v["reports"].as_array().unwrap().iter().find(|r| r["task"] == "hilbert").unwrap();
    assert_eq!(hilbert["route_a"]["h"], serde_json::json!([1, 1, -1]));
    assert_eq!(hilbert["route_a"]["e"][2], -1);
}

#[test]
fn violated_bound_exits_two() {
    let path = scratch("ex42.json", "");
    let out = filtra(&["example", "4.2", "--json", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let verdicts: Vec<&str> = v["reports"].as_array().unwrap().iter().filter_map(|r| r["verdict"].as_str()).collect();
    assert_eq!(verdicts, ["BoundViolated-HypothesisFailed"]);
    assert_eq!(v["field"], "GF(32003)");
}

#[test]
fn both_routes_agree() {
    let p = scratch("ring.flt", RING);
    let out = filtra(&["hilbert", "--input", p.to_str().unwrap(), "--route", "both", "--json", "-"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let r = &v["reports"][0];
    assert_eq!(r["route_a"]["e"], r["route_b"]["e"]);
    assert_eq!(r["routes_agree"], true);
}

#[test]
fn overrides_and_human_text() {
    let p = scratch("ring2.flt", RING);
    let out = filtra(&["gb", "--input", p.to_str().unwrap(), "--field", "QQ", "--order", "lex"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("over QQ"), "{text}");
    assert!(text.contains("gb I (lex)"), "{text}");
    let bad = filtra(&["gb", "--input", p.to_str().unwrap(), "--field", "GF:12"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn verify_reports_verdict() {
    let p = scratch("ring3.flt", RING);
    let out = filtra(&["verify", "lower-bound", "--input", p.to_str().unwrap(), "--json", "-"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["reports"][0]["theorem"], "lower-bound");
    assert_eq!(v["reports"][0]["quantities"]["e2"], -1);
}

#[test]
fn errors_exit_one_with_position() {
    let p = scratch("bad.flt", "vars x, y\nideal I = x + w\n");
    let out = filtra(&["gb", "--input", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2, column 15"), "{err}");
    assert_eq!(filtra(&["verify", "no-such-bound", "--input", p.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(filtra(&["example", "9.9"]).status.code(), Some(1));
}

#[test]
fn exit_codes_are_stable() {
    let a = filtra(&["example", "3.3", "--seed", "5", "--json", "-"]);
    let b = filtra(&["example", "3.3", "--seed", "5", "--json", "-"]);
    assert_eq!(a.status.code(), b.status.code());
    assert_eq!(a.stdout, b.stdout);
}
