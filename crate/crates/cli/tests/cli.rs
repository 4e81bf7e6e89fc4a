use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curvesyz")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

#[test]
fn analyze_free_cubic() {
    let v = json(&["analyze", "x*(x*y-z^2)"]);
    assert_eq!(v["exponents"], serde_json::json!([1, 1]));
    assert_eq!(v["classification"], "free");
    assert_eq!(v["tau"], 3);
    assert!(v["engine"].as_str().unwrap().starts_with("curvesyz"));
    assert!(v["certificate"].is_object());
    assert!(v["timing_ms"].is_null());
}

#[test]
fn analyze_nearly_free_quartic() {
    let v = json(&["analyze", "x*(x+y)*(x*y-z^2)"]);
    assert_eq!(v["exponents"], serde_json::json!([2, 2, 2]));
    assert_eq!(v["classification"], "nearly_free");
    assert_eq!(v["nu"], 1);
    assert_eq!(v["sigma"], 3);
    assert_eq!(v["tables"]["d0"].as_array().unwrap()[..5], [0, 0, 3, 8, 15]);
}

#[test]
fn output_is_deterministic() {
    let a = run(&["analyze", "x*y*(x+y)*(x*y-z^2)"]);
    let b = run(&["analyze", "x*y*(x+y)*(x*y-z^2)"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn add_line_tangent_chord() {
    let v = json(&["add-line", "x*z*(x*y-z^2)", "x-z"]);
    assert_eq!((v["case"].as_u64(), v["r"].as_u64(), v["epsilon"].as_i64()), (Some(2), Some(2), Some(1)));
    assert_eq!(v["c_prime"]["exponents"], serde_json::json!([2, 2]));
    assert_eq!(v["identities_failed"], 0);
}

#[test]
fn add_line_to_cubics() {
    let v = json(&["add-line", "(x^3+y^3)*(x^3+y^3+z^3)", "x+2*y-z"]);
    assert_eq!(v["case"], 3);
    assert_eq!(v["c_prime"]["exponents"], serde_json::json!([3, 4, 5]));
    assert_eq!(v["c_prime"]["classification"], "plus_one_generated");
}

#[test]
fn delete_line_gives_nearly_free() {
    let v = json(&["delete-line", "x*z*(x-z)*(x*y-z^2)", "x"]);
    assert_eq!(v["direction"], "deletion");
    assert_eq!(v["case"], 3);
    assert_eq!(v["c"]["exponents"], serde_json::json!([2, 2, 2]));
}

#[test]
fn csv_and_table_formats() {
    let out = run(&["--format", "csv", "analyze", "x*(x*y-z^2)"]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert_eq!(s.lines().count(), 2);
    assert!(s.starts_with("degree,exponents,classification"));
    let out = run(&["--format", "table", "scan", "cm", "--to", "4"]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("cm-3") && s.contains("cm-4") && !s.contains("cm-5"));
}

#[test]
fn scan_families() {
    let v = json(&["scan", "cusp", "--from", "2", "--to", "3"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r["pass"] == true));
    let v = json(&["scan", "rkc", "--from", "5", "--to", "5", "--abc", "1,1,1"]);
    assert_eq!(v["rows"][0]["exponents"], serde_json::json!([2, 2]));
}

#[test]
fn conjectures_seeded() {
    let args = ["conjectures", "--seed", "3", "--count", "8", "--reducible", "2"];
    let a = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, run(&args).stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["irreducible"]["checked"], 8);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["analyze", "x+*y"]), 2);
    assert_eq!(code(&["analyze", "x^2+y"]), 3);
    assert_eq!(code(&["analyze", "x^2*y"]), 4);
    assert_eq!(code(&["add-line", "x*(x*y-z^2)", "x"]), 5);
    assert_eq!(code(&["scan", "nope"]), 6);
    assert_eq!(code(&["analyze", "x*y"]), 1);
}
