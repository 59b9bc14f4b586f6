use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn smc(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_smc")).args(args).current_dir(dir).output().expect("binary runs")
}

fn json(bytes: &[u8]) -> Value {
    serde_json::from_slice(bytes).expect("valid json")
}

fn read_json(path: &Path) -> Value {
    json(&std::fs::read(path).unwrap())
}

#[test]
fn construct_to_stdout_is_a_code_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = smc(dir.path(), &["construct", "gabidulin", "--n", "3", "--t", "1"]);
    assert!(out.status.success());
    let v = json(&out.stdout);
    assert_eq!(v["kind"], "rank_code");
    assert_eq!(v["members"].as_array().unwrap().len(), 64);
    assert_eq!(v["provenance"]["params"]["verified_distance"], 2);
    assert!(std::fs::read_dir(dir.path()).unwrap().next().is_none());
}

#[test]
fn out_writes_file_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = smc(dir.path(), &["construct", "spread", "--k", "2", "--n", "4", "--out", "s.json"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let code = read_json(&dir.path().join("s.json"));
    assert_eq!(code["kind"], "subspace_code");
    assert_eq!(code["subspaces"].as_array().unwrap().len(), 5);
    let m = read_json(&dir.path().join("s.json.manifest.json"));
    assert_eq!(m["command"], "construct");
    assert_eq!(m["argv"][1], "spread");
    assert_eq!(m["outputs"][0]["path"], "s.json");
    assert_eq!(m["outputs"][0]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn modulus_is_recorded() {
    let dir = tempfile::tempdir().unwrap();
    let out = smc(dir.path(), &["construct", "gabidulin", "--n", "3", "--t", "1", "--modulus", "1,1,0,1", "--out", "g.json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let m = read_json(&dir.path().join("g.json.manifest.json"));
    assert_eq!(m["modulus"], serde_json::json!([1, 1, 0, 1]));
    let bad = smc(dir.path(), &["construct", "gabidulin", "--n", "3", "--t", "1", "--modulus", "1,0,0,1"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn pipeline_through_metric_fold_and_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(smc(d, &["construct", "spread", "--k", "2", "--n", "4", "--out", "s.json"]).status.success());
    assert!(smc(d, &["construct", "span", "--input", "s.json", "--l", "4", "--out", "w.json"]).status.success());
    let m = smc(d, &["metric", "w.json", "--metric", "subspace"]);
    assert!(m.status.success());
    assert_eq!(json(&m.stdout)["minimum"], 4);
    let csv = smc(d, &["--format", "csv", "metric", "w.json", "--metric", "insdel"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.starts_with("metric,min,witness_i,witness_j,pairs\ninsdel,"));
    let f = smc(d, &["fold", "w.json", "--s", "2"]);
    assert!(f.status.success());
    assert_eq!(json(&f.stdout)["kind"], "folded_code");
    let mut one = read_json(&d.join("w.json"));
    one["codewords"] = Value::Array(one["codewords"].as_array().unwrap()[..1].to_vec());
    std::fs::write(d.join("one.json"), serde_json::to_vec(&one).unwrap()).unwrap();
    assert_eq!(smc(d, &["metric", "one.json", "--metric", "hamming"]).status.code(), Some(2));
    let b = smc(d, &["bounds", "--code", "w.json"]);
    assert!(b.status.success());
    let reports = json(&b.stdout);
    assert!(reports.as_array().unwrap().iter().all(|r| r["satisfied"] != false));
}

#[test]
fn bounds_table_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = smc(dir.path(), &["--format", "csv", "bounds", "--n", "4", "--q", "2", "--d", "2", "--k", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("bound,params,value,measured,satisfied,note\n"));
    assert!(text.contains("\nlevenshtein,n=4;q=2,4,"));
    assert!(text.contains("\nklo,q=2,3,"));
}

#[test]
fn simulate_layout_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(smc(d, &["construct", "spread", "--k", "2", "--n", "4", "--out", "s.json"]).status.success());
    assert!(smc(d, &["construct", "all-vectors", "--input", "s.json", "--l", "3", "--out", "av.json"]).status.success());
    let out = smc(d, &["--seed", "3", "simulate", "av.json", "--del", "2", "--trials", "40", "--out", "t.csv"]);
    assert!(out.status.success());
    let summary = json(&out.stdout);
    assert_eq!(summary["trials"], 40);
    assert_eq!(summary["ok"], 40);
    assert_eq!(summary["d_insdel"], 6);
    assert_eq!(read_json(&d.join("t.csv.summary.json")), summary);
    let transcript = std::fs::read_to_string(d.join("t.csv")).unwrap();
    assert_eq!(transcript.lines().count(), 41);
    assert!(transcript.starts_with("trial,seed,ins,del,result\n0,3,0,2,ok\n"));
}

#[test]
fn verify_single_suite() {
    let dir = tempfile::tempdir().unwrap();
    let out = smc(dir.path(), &["verify", "--suite", "spread"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out.stdout);
    assert_eq!(v["passed"], true);
    assert_eq!(v["suites"][0]["suite"], "spread");
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    for args in [
        vec!["construct", "gabidulin"],
        vec!["verify", "--suite", "nope"],
        vec!["metric", "missing.json", "--metric", "hamming"],
        vec!["frobnicate"],
        vec!["construct", "gabidulin", "--q", "4", "--n", "2", "--t", "1"],
    ] {
        assert_eq!(smc(d, &args).status.code(), Some(2), "{args:?}");
    }
    std::fs::write(d.join("truncated.json"), "{\"kind\": \"vector_code\"}").unwrap();
    assert_eq!(smc(d, &["metric", "truncated.json", "--metric", "hamming"]).status.code(), Some(2));
    assert!(smc(d, &["construct", "singer-ds", "--n", "3", "--out", "ds.json"]).status.success());
    let wrong = smc(d, &["metric", "ds.json", "--metric", "subset"]);
    assert_eq!(wrong.status.code(), Some(2));
}

#[test]
fn violated_declared_distance_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(smc(d, &["construct", "spread", "--k", "2", "--n", "4", "--out", "s.json"]).status.success());
    let mut code = read_json(&d.join("s.json"));
    // two planes sharing a line sit at distance 2, below the declared 4
    code["subspaces"] = serde_json::json!([
        {"basis": [[1, 0, 0, 0], [0, 1, 0, 0]]},
        {"basis": [[1, 0, 0, 0], [0, 0, 1, 0]]}
    ]);
    std::fs::write(d.join("overlap.json"), serde_json::to_vec(&code).unwrap()).unwrap();
    let out = smc(d, &["construct", "span", "--input", "overlap.json", "--l", "2"]);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn seeds_change_transcripts() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(smc(d, &["construct", "spread", "--k", "2", "--n", "4", "--out", "s.json"]).status.success());
    assert!(smc(d, &["construct", "all-vectors", "--input", "s.json", "--l", "3", "--out", "av.json"]).status.success());
    let run = |seed: &str| {
        smc(d, &["--format", "csv", "--seed", seed, "simulate", "av.json", "--ins", "1", "--del", "1", "--trials", "20"])
            .stdout
    };
    assert_eq!(run("1"), run("1"));
    assert_ne!(run("1"), run("2"));
}
