use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn corpus(rel: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(rel)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_findim")).args(args).output().unwrap();
    let report = serde_json::from_slice(&out.stdout).expect("report is JSON");
    (out.status.code().unwrap(), report)
}

#[test]
fn bound_on_dual_numbers() {
    let (a, v) = (
        corpus("algebras/trunc2.json"),
        corpus("modules/regular_plus_simple.json"),
    );
    let (code, r) = run(&["bound", &a, &v, &v]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["bound"]["bound"], 3);
    assert_eq!(r["result"]["audit"]["violations"].as_array().unwrap().len(), 0);
    assert_eq!(r["result"]["audit"]["sample_count"], 100);
    assert_eq!(r["config"]["samples"], 100);
    assert_eq!(r["config"]["cutoff"], 20);
}

#[test]
fn idealized_reports_witness() {
    let (code, r) = run(&["idealized", &corpus("embeddings/upper_triangular_in_matrix2.json")]);
    assert_eq!(code, 0);
    let v = &r["result"]["verdict"];
    assert_eq!(v["holds"], false);
    assert_eq!(v["witness"]["ambient_element"], "e21");
    assert_eq!(v["witness"]["product"], serde_json::json!([0, 0, 0, 1]));
    let (_, r) = run(&["idealized", &corpus("embeddings/dual_numbers_in_upper_triangular.json")]);
    assert_eq!(r["result"]["verdict"]["holds"], true);
}

#[test]
fn malformed_relation_exits_2() {
    let path = corpus("invalid/non_parallel_relation.json");
    let (code, r) = run(&["build", &path]);
    assert_eq!(code, 2);
    assert_eq!(r["error"]["kind"], "parse");
    assert!(r["error"]["message"].as_str().unwrap().contains("relation #0"));
    assert!(r["error"]["offending_inputs"][&path]["relations"].is_array());
}

#[test]
fn unmet_hypothesis_exits_2() {
    let a = corpus("algebras/trunc2.json");
    let reg = corpus("modules/regular.json");
    let (code, r) = run(&["bound", &a, &reg, &reg]);
    assert_eq!(code, 2);
    assert_eq!(r["error"]["kind"], "hypothesis");
    let (code, _) = run(&[
        "idealized-bound",
        &corpus("embeddings/upper_triangular_in_matrix2.json"),
        &reg,
        &reg,
    ]);
    assert_eq!(code, 2);
}

#[test]
fn unreadable_json_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let (code, r) = run(&["gldim", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(r["error"]["offending_inputs"][bad.to_str().unwrap()], "{ not json");
}

#[test]
fn small_commands() {
    let a2 = corpus("algebras/a2.json");
    let (_, r) = run(&["build", &a2]);
    assert_eq!(
        (r["result"]["dim"].as_u64(), r["result"]["radical_dim"].as_u64()),
        (Some(3), Some(1))
    );
    let (_, r) = run(&["enumerate", &a2]);
    assert_eq!(
        (r["result"]["count"].as_u64(), r["result"]["findim"].as_u64()),
        (Some(3), Some(1))
    );
    let (_, r) = run(&["auslander", &a2]);
    assert_eq!(r["result"]["end_dim"], 5);
    let g = corpus("modules/generator.json");
    let (_, r) = run(&["decompose", &a2, &g]);
    assert_eq!(r["result"]["summands"], 3);
    let (_, r) = run(&["hom", &a2, &g, &g]);
    assert_eq!(r["result"]["dim"], 5);
    let s = corpus("modules/a2_p1_s1.json");
    let (_, r) = run(&["pd", &a2, &s]);
    assert_eq!(r["result"]["pd"]["value"], 1);
    let (_, r) = run(&["syzygy", &a2, &s]);
    assert_eq!(r["result"]["syzygy"]["dim"], 1);
    let (_, r) = run(&["endo", &a2, &g]);
    assert_eq!(r["result"]["gldim"]["value"], 2);
    let (code, r) = run(&["coresolution", &a2, &g, "--n", "0", "--n", "1", "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["tests"].as_array().unwrap().len(), 3);
    let (code, r) = run(&["tensor-syzygy", &a2, &g, "--samples", "10", "--seed", "3"]);
    assert_eq!(code, 0);
    assert_eq!(r["config"]["seed"], 3);
    let (code, _) = run(&["probe", &corpus("algebras/trunc2.json")]);
    assert_eq!(code, 0);
}
