use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_lambda-sw"));
    c.env_remove("LAMBDA_SW_CACHE");
    c
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout));
    })
}

const TABLE: &str = "name,type,payload,strands\n\
    unknot,seifert,[],\n\
    trefoil,braid,1 1 1,2\n\
    figure-eight,seifert,\"[[1,1],[0,-1]]\",\n";

#[test]
fn alex_from_seifert_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("v.json");
    fs::write(&p, "[[-1,1],[0,-1]]").unwrap();
    let out = bin().args(["alex", "--seifert"]).arg(&p).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["coeffs"]["1"], "1");
}

#[test]
fn bad_inputs_exit_two() {
    let out = bin()
        .args(["alex", "--braid", "1 1", "--strands", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("closure has 2 components"));
    let out = bin()
        .args(["alex", "--seifert", "/nonexistent/file"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["eta", "--chi", "3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn lambda_trefoil() {
    let out = bin()
        .args(["lambda", "--braid", "1 1 1", "--strands", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["lambda_sw"], "1");
    assert_eq!(v["sw_sum"], 1);
}

#[test]
fn failing_suite_exits_one_with_transcript() {
    let out = bin().args(["verify", "dirac-path"]).output().unwrap();
    let v = json(&out);
    let expected = if v["passed"] == true { 0 } else { 1 };
    assert_eq!(out.status.code(), Some(expected));
    assert!(v["transcript"]["difference"].is_object());
}

#[test]
fn spectral_grid_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("grid.json");
    fs::write(
        &p,
        r#"{"samples":[{"lambda_ir":"1","lam":"1/2","R":"5","lambda0":"1/2"}]}"#,
    )
    .unwrap();
    let out = bin()
        .args(["verify", "spectral", "--precision", "30", "--grid-file"])
        .arg(&p)
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(json(&out)["transcript"]["samples"].as_array().unwrap().len(), 1);
}

#[test]
fn batch_uses_env_cache_dir() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("knots.csv");
    fs::write(&table, TABLE).unwrap();
    let cache = dir.path().join("cache");
    let run = |name: &str| {
        let out_path = dir.path().join(name);
        let out = bin()
            .env("LAMBDA_SW_CACHE", &cache)
            .args(["batch", "--input"])
            .arg(&table)
            .arg("--out")
            .arg(&out_path)
            .output()
            .unwrap();
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        (fs::read(out_path).unwrap(), json(&out))
    };
    let (a, s1) = run("a.jsonl");
    let (b, s2) = run("b.jsonl");
    assert_eq!(a, b);
    assert_eq!(s1["computed"], 3);
    assert_eq!(s2["cache_hits"], 3);
    assert_eq!(fs::read_dir(&cache).unwrap().count(), 3);
}

#[test]
fn batch_without_cache_and_with_bad_row() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("knots.csv");
    fs::write(&table, format!("{TABLE}bad,seifert,\"[[1,0],[0,1]]\",\n")).unwrap();
    let out_path = dir.path().join("out.jsonl");
    let out = bin()
        .args(["batch", "--no-cache", "--input"])
        .arg(&table)
        .arg("--out")
        .arg(&out_path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["errors"], 1);
    let text = fs::read_to_string(out_path).unwrap();
    let last: Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(last["row"], 4);
    assert!(last["error"].is_string());
}
