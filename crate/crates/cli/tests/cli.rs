use std::path::PathBuf;
use std::process::Command;

use mulaut_cli::{run_args, Outcome};

fn run(args: &[&str]) -> Outcome {
    run_args(std::iter::once("mulaut").chain(args.iter().copied()))
}

fn golden(name: &str, args: &[&str]) {
    let out = run(args);
    assert_eq!(out.stderr, "", "{args:?}");
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &out.stdout).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
    assert_eq!(out.stdout, expected, "golden file {name}");
}

#[test]
fn golden_classify() {
    golden("classify_z6.txt", &["classify", "Z/6"]);
    golden("classify_f2_x3.txt", &["classify", "Z/2[x]/(x^3)"]);
}

#[test]
fn golden_homs() {
    golden("homs_z4_z8.txt", &["homs", "Z/4", "Z/8"]);
}

#[test]
fn golden_aut() {
    golden("aut_z8.txt", &["aut", "Z/8"]);
}

#[test]
fn golden_verify() {
    golden("verify_z2_z4_z8.txt", &["verify", "Z/2", "Z/4", "Z/8", "--samples", "100"]);
    golden("verify_z4_z4.txt", &["verify", "Z/4", "Z/4", "--samples", "100"]);
}

#[test]
fn golden_catalog() {
    golden("catalog_16.txt", &["catalog", "--max-order", "16"]);
}

#[test]
fn golden_json() {
    golden("verify_z4_z4.json", &["verify", "Z/4", "Z/4", "--format", "json", "--samples", "100"]);
    golden("classify_z4.json", &["classify", "Z/4", "--format", "json"]);
}

#[test]
fn json_is_byte_stable() {
    for args in [
        &["verify", "Z/2", "Z/4", "Z/8", "--format", "json", "--seed", "9"][..],
        &["homs", "Z/6", "Z/4", "--format", "json"],
        &["aut", "Z/2 x Z/4", "--format", "json"],
        &["catalog", "--max-order", "20", "--format", "json"],
    ] {
        let a = run(args);
        let b = run(args);
        let mut seq: Vec<&str> = args.to_vec();
        seq.push("--sequential");
        let c = run(&seq);
        assert_eq!(a.code, 0);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.stdout, c.stdout, "parallel and sequential output differ");
        let v: serde_json::Value = serde_json::from_str(&a.stdout).unwrap();
        assert!(v.get("command").is_some());
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify", "Z/2", "Z/4", "Z/8"]).code, 0);
    assert_eq!(run(&["verify", "Z/4", "Z/4"]).code, 3);
    assert_eq!(run(&["classify", "Z/6"]).code, 0);
    assert_eq!(run(&["classify", "Z/1"]).code, 1);
    assert_eq!(run(&["classify", "Z/4[x]/(2*x^2+1)"]).code, 1);
    assert_eq!(run(&["classify", "Z/4", "Z/2"]).code, 1);
    assert_eq!(run(&["verify", "Z/4"]).code, 1);
    assert_eq!(run(&["homs", "Z/4"]).code, 1);
    assert_eq!(run(&["catalog", "--format", "yaml"]).code, 1);
    assert_eq!(run(&["frobnicate"]).code, 1);
    assert_eq!(run(&["classify", "Z/64 x Z/65"]).code, 2);
    assert_eq!(run(&["classify", "Z/100", "--max-size", "50"]).code, 2);
    assert_eq!(run(&["aut", "Z/200"]).code, 2);
    assert_eq!(run(&["verify", "Z/8", "Z/8", "--budget", "100"]).code, 2);
    assert_eq!(run(&["--help"]).code, 0);
    assert_eq!(run(&["--version"]).code, 0);
}

#[test]
fn binary_exit_codes_and_streams() {
    let bin = env!("CARGO_BIN_EXE_mulaut");
    let out = Command::new(bin).args(["verify", "Z/4", "Z/4", "--samples", "10"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stdout).contains("decomposition holds: no"));
    let out = Command::new(bin).args(["classify", "Z/"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: parse error at position 2"));
    let out = Command::new(bin).args(["verify", "Z/2", "Z/4", "--format", "json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["decomposition_holds"], serde_json::Value::Bool(true));
}

#[test]
fn verify_examples() {
    let out = run(&["verify", "Z/2", "Z/4", "Z/8", "--format", "json", "--samples", "10"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["aut_orders_per_factor"], serde_json::json!([1, 1, 4]));
    assert_eq!(v["product_aut_order"], serde_json::json!(4));
    let out = run(&["classify", "Z/6", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["profile"]["is_local"], serde_json::json!(false));
    assert_eq!(v["profile"]["is_d_ring"], serde_json::json!(false));
    assert_eq!(v["profile"]["is_total_ring_of_fractions"], serde_json::json!(true));
}
