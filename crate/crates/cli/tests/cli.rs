use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(rel)
}

fn seqcm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seqcm")).args(args).env_remove("SEQCM_CACHE_DIR").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn classify_disjoint_edges() {
    let out = seqcm(&["classify", data("ex43.json").to_str().unwrap(), "--dd", "--grid", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["status"], "ok");
    assert_eq!(r["dim"], 2);
    assert_eq!(r["verdicts"]["seq_cm"], false);
    assert_eq!(r["verdicts"]["cm"], false);
    assert_eq!(r["length_sq"], 9);
    assert_eq!(r["dd_certificate"]["fit_coefficients"], serde_json::json!([1, 0, 2]));
    let table = r["i_table"].as_array().unwrap();
    assert_eq!(table.len(), 9);
    assert!(table.iter().all(|e| e["value"] == 1));
}

#[test]
fn classify_edge_and_point_with_witness() {
    let out = seqcm(&["classify", data("ex42v.json").to_str().unwrap(), "--approx-witness"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["verdicts"], serde_json::json!({"cm": false, "seq_cm": true, "approx_cm": true}));
    assert!(r["approx_witness"].is_string());
    assert_eq!(r["length_sq"], 6);
}

#[test]
fn classify_presentation_with_sop() {
    let out =
        seqcm(&["classify", data("ce2/module.txt").to_str().unwrap(), "--sop", data("ce2/sop.txt").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["verdicts"]["seq_cm"], false);
    assert_eq!(r["good_sop"].as_array().unwrap().len(), 2);
    assert_eq!(r["multiplicities"], serde_json::json!([0, 1, 2]));
}

#[test]
fn text_format_renders_the_same_report() {
    let out = seqcm(&["--format", "text", "classify", data("ex43.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("sequentially cohen-macaulay: no"));
    assert!(text.contains("length at squares: 9"));
}

#[test]
fn missing_file_is_an_input_error() {
    let out = seqcm(&["classify", "no/such/file.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no/such/file.json"));
}

#[test]
fn malformed_complex_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"vertices":3,"facets":[[1,2]]}"#).unwrap();
    assert_eq!(seqcm(&["classify", path.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(seqcm(&["--allow-ghost-vertices", "classify", path.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn non_parameters_give_unknown() {
    let dir = tempfile::tempdir().unwrap();
    let sop = dir.path().join("sop.txt");
    std::fs::write(&sop, "X1\nX2\n").unwrap();
    let out = seqcm(&["classify", data("ex42v.json").to_str().unwrap(), "--sop", sop.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let r = json(&out);
    assert_eq!(r["status"], "unknown");
    assert_eq!(r["verdicts"]["seq_cm"], Value::Null);
}

#[test]
fn reference_rows_for_one_instance() {
    let out = seqcm(&["paper-examples", "--only", "ex44"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json(&out);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r["id"] == "ex44" && r["pass"] == true));
    assert_eq!(seqcm(&["paper-examples", "--only", "nope"]).status.code(), Some(1));
}

#[test]
fn full_reference_run_reports_only_the_first_counter_example_table() {
    let out = seqcm(&["paper-examples"]);
    let rows = json(&out);
    let failing: Vec<(String, String)> = rows
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["pass"] == false)
        .map(|r| (r["id"].as_str().unwrap().to_string(), r["check"].as_str().unwrap().to_string()))
        .collect();
    assert_eq!(failing, [("s3-1".to_string(), "deficiency table".to_string())]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn i_table_for_the_second_counter_example() {
    let out = seqcm(&[
        "i-table",
        data("ce2/module.txt").to_str().unwrap(),
        "--sop",
        data("ce2/sop.txt").to_str().unwrap(),
        "--grid",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    for e in r["i_table"].as_array().unwrap() {
        let n2 = e["n"][1].as_u64().unwrap();
        assert_eq!(e["value"], if n2 == 1 { 0 } else { 1 }, "{e}");
    }
}

#[test]
fn survey_is_cached_and_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let first = seqcm(&["--cache", cache, "survey", "4", "--up-to-iso"]);
    assert_eq!(first.status.code(), Some(0));
    let summary = json(&first);
    assert_eq!(summary["total"], 20);
    assert_eq!(summary["not_sequentially_cm"], 1);
    assert_eq!(summary["non_sequentially_cm_complexes"][0]["facets"], serde_json::json!([[1, 2], [3, 4]]));
    assert_eq!(summary["cache_hits"], 0);
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    assert_eq!(files.len(), 20);
    let before: Vec<Vec<u8>> = files.iter().map(|f| std::fs::read(f).unwrap()).collect();
    let second = seqcm(&["--cache", cache, "survey", "4", "--up-to-iso"]);
    assert_eq!(json(&second)["cache_hits"], 20);
    let after: Vec<Vec<u8>> = files.iter().map(|f| std::fs::read(f).unwrap()).collect();
    assert_eq!(before, after);
    let three = seqcm(&["--cache", cache, "survey", "3"]);
    let three = json(&three);
    assert_eq!(three["total"], 9);
    assert_eq!(three["not_sequentially_cm"], 0);
}

#[test]
fn survey_cache_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_seqcm"))
        .args(["survey", "2"])
        .env("SEQCM_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 2);
}

#[test]
fn survey_rejects_large_vertex_counts() {
    assert_eq!(seqcm(&["survey", "7"]).status.code(), Some(1));
}
