use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_spectrep"));
    c.env_remove("SPECTREP_SEARCH_BOUND");
    c
}

fn run(args: &[&str]) -> (i32, String) {
    let out = bin().args(args).output().expect("binary runs");
    (out.status.code().expect("exit code"), String::from_utf8(out.stdout).expect("utf-8"))
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).expect("stdout is JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("spectrep-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn verify_roundtrip(artifact: &str, name: &str) {
    let path = scratch(name);
    std::fs::write(&path, artifact).unwrap();
    let (code, out) = run(&["verify", &format!("@{}", path.display())]);
    let v = json(&out);
    assert_eq!(code, 0, "{out}");
    assert_eq!(v["valid"], Value::Bool(true));
}

#[test]
fn represent_hermitian_hyperbola() {
    let (code, out) = run(&["represent", "--kind", "hermitian", "t^2 - x^2 - 1"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["type"], "spectral_rep");
    let text: Vec<Vec<&str>> = v["M"]
        .as_array()
        .unwrap()
        .iter()
        .map(|row| row.as_array().unwrap().iter().map(|e| e["text"].as_str().unwrap()).collect())
        .collect();
    assert_eq!(text, vec![vec!["0", "x - i"], vec!["x + i", "0"]]);
    verify_roundtrip(&out, "rep.json");
}

#[test]
fn certify_negative_verdict_exits_one() {
    let (code, out) = run(&["certify", "t^2 + 1"]);
    assert_eq!(code, 1);
    let v = json(&out);
    assert_eq!(v["verdict"], false);
    assert_eq!(v["witness"]["a"], "0");
    verify_roundtrip(&out, "cert-false.json");
}

#[test]
fn certify_positive_and_hyperbolic() {
    let (code, out) = run(&["certify", "t^2 - x^2 - 1"]);
    assert_eq!(code, 0);
    verify_roundtrip(&out, "cert-true.json");
    let (code, out) = run(&["certify", "--e", "0,0,1", "z^2 - x^2 - y^2"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["verdict"], true);
    let (code, _) = run(&["certify", "--e", "1,0,0", "z^2 - x^2 - y^2"]);
    assert_eq!(code, 1);
}

#[test]
fn hv_pencils_verify() {
    for kind in ["hermitian", "symmetric"] {
        let (code, out) = run(&["hv", "--kind", kind, "--e", "0,0,1", "z^2 - x^2 - y^2"]);
        assert_eq!(code, 0, "{out}");
        assert_eq!(json(&out)["type"], "pencil");
        verify_roundtrip(&out, &format!("pencil-{kind}.json"));
    }
    let (code, out) = run(&["hv", "z - x", "z + y", "z^2 - x^2 - y^2"]);
    assert_eq!(code, 0, "{out}");
    verify_roundtrip(&out, "pencil-factors.json");
}

#[test]
fn hv_with_scaled_direction_and_float() {
    let (code, out) = run(&["--float", "6", "hv", "--e", "0,0,2", "z^2 - x^2 - y^2"]);
    assert_eq!(code, 0, "{out}");
    let v = json(&out);
    assert!(v.get("C_float").is_some());
    verify_roundtrip(&out, "pencil-scaled.json");
}

#[test]
fn analyze_emits_verifiable_curve() {
    let (code, out) = run(&["analyze", "t^2 - (x^2+1)*(x^2+4)"]);
    assert_eq!(code, 0);
    verify_roundtrip(&out, "curve.json");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["analyze", "t^2 - x^2"]).0, 2);
    assert_eq!(run(&["represent", "t^2 - x^2 - 2"]).0, 2);
    assert_eq!(run(&["represent", "t^2 - x^2 + 1"]).0, 1);
    assert_eq!(run(&["represent", "t^2 + x^2 + 1"]).0, 1);
    assert_eq!(run(&["represent", "t^2 +"]).0, 3);
    assert_eq!(run(&["represent", "--kind", "orthogonal", "t - x"]).0, 3);
    assert_eq!(run(&["frobnicate"]).0, 3);
    assert_eq!(run(&[]).0, 3);
    assert_eq!(run(&["--help"]).0, 0);
    let (code, out) = run(&["verify", r#"{"schema": 1, "type": "spectral_rep"}"#]);
    assert_eq!(code, 3, "{out}");
}

#[test]
fn tampered_artifact_is_rejected() {
    let (_, out) = run(&["represent", "t^2 - x^2 - 1"]);
    let tampered = out.replacen("\"x - i\"", "\"x - 2i\"", 1);
    assert_ne!(tampered, out);
    let path = scratch("tampered.json");
    std::fs::write(&path, tampered).unwrap();
    let (code, _) = run(&["verify", &format!("@{}", path.display())]);
    assert_ne!(code, 0);
}

#[test]
fn search_bound_from_environment() {
    let out = bin()
        .env("SPECTREP_SEARCH_BOUND", "3")
        .args(["represent", "--kind", "symmetric", "t^2 - x^2 - 1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = bin().env("SPECTREP_SEARCH_BOUND", "lots").args(["represent", "--kind", "symmetric", "t - x"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn manifest_keeps_order_and_takes_max_code() {
    let path = scratch("jobs.jsonl");
    std::fs::write(
        &path,
        [
            r#"{"command": "represent", "input": "t^2 - x^2 - 1"}"#,
            r#"{"command": "certify", "input": "t^2 + 1"}"#,
            "",
            r#"{"command": "hv", "inputs": ["z - x", "z^2 - x^2 - y^2"], "kind": "symmetric"}"#,
            r#"{"command": "analyze", "input": "t - x^3"}"#,
        ]
        .join("\n"),
    )
    .unwrap();
    let (code, out) = run(&["--manifest", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    let types: Vec<String> = out.lines().map(|l| json(l)["type"].as_str().unwrap().to_string()).collect();
    assert_eq!(types, ["spectral_rep", "certificate", "pencil", "curve"]);
}

#[test]
fn output_file() {
    let path = scratch("out.json");
    let (code, out) = run(&["--output", path.to_str().unwrap(), "represent", "t - x^2"]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let v = json(&std::fs::read_to_string(&path).unwrap());
    assert_eq!(v["n"], 1);
}

#[test]
fn altered_exact_data_fails_verification() {
    let (_, out) = run(&["represent", "t^2 - x^2 - 1"]);
    let mut v = json(&out);
    v["witness"]["D"][0] = Value::String("3".into());
    let path = scratch("altered.json");
    std::fs::write(&path, v.to_string()).unwrap();
    let (code, out) = run(&["verify", &format!("@{}", path.display())]);
    assert_eq!(code, 1, "{out}");
    assert_eq!(json(&out)["valid"], false);
}
