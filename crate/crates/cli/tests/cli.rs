use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn wildred(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wildred")).current_dir(dir).args(args).output().expect("spawn wildred")
}

fn ok_json(dir: &Path, args: &[&str]) -> Value {
    let out = wildred(dir, args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn write_pair(dir: &Path, name: &str, p: u64, a: i64, b: i64) {
    let doc = json!({
        "schema": 1,
        "field": {"p": p, "deg": 1},
        "t": 2,
        "mats": [
            {"rows": 1, "cols": 1, "entries": [[a.to_string()]]},
            {"rows": 1, "cols": 1, "entries": [[b.to_string()]]},
        ],
    });
    fs::write(dir.join(name), doc.to_string()).unwrap();
}

#[test]
fn gen_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    for name in ["a.json", "b.json"] {
        assert!(wildred(d, &["gen", "pair", "--n", "2", "--seed", "7", "-o", name]).status.success());
    }
    assert_eq!(fs::read(d.join("a.json")).unwrap(), fs::read(d.join("b.json")).unwrap());
}

#[test]
fn similar_instance_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(wildred(d, &["gen", "similar-pair-instance", "--n", "3", "--seed", "2", "-o", "inst.json"]).status.success());
    let v = ok_json(d, &["verify", "inst.json"]);
    assert_eq!(v["claims"], 1);
    assert_eq!(v["all_verified"], true);
}

#[test]
fn gen_algebra_delegates_to_decode() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(wildred(d, &["gen", "pair", "--n", "2", "--seed", "3", "-o", "pair.json"]).status.success());
    let gen = ok_json(d, &["gen", "algebra", "--from-pair", "pair.json"]);
    let decoded = ok_json(d, &["decode-alg", "pair.json"]);
    assert_eq!(gen, decoded);
    assert_eq!(gen["dim"], 4);
}

#[test]
fn pipeline_marks_skipped_stages() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write_pair(d, "p.json", 7, 1, 2);
    write_pair(d, "q.json", 7, 2, 1);
    let v = ok_json(d, &["pipeline", "p.json", "q.json"]);
    let stages = v["stages"].as_array().unwrap();
    assert_eq!(stages[0]["status"], "unrelated");
    assert!(stages[1..].iter().all(|s| s["status"] == "skipped"));
    assert_eq!(v["config"]["rng"], "chacha8/v1");
}

#[test]
fn pipeline_chain_replays_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(wildred(d, &["gen", "similar-pair-instance", "--n", "2", "--seed", "9", "-o", "inst.json"]).status.success());
    let out = wildred(d, &["pipeline", "inst.json#/source", "inst.json#/target", "--eps", "-1", "-o", "report.json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = ok_json(d, &["verify", "report.json"]);
    assert_eq!(v["claims"], 4);
    assert_eq!(v["all_verified"], true);
}

#[test]
fn stage_errors_are_named() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write_pair(d, "p.json", 101, 1, 2);
    assert!(wildred(d, &["--field", "101", "gen", "pair", "--n", "2", "-o", "big.json"]).status.success());
    let out = wildred(d, &["pipeline", "p.json", "big.json"]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("stage input"), "{err}");
}

#[test]
fn theorem_reports_are_stable() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let a = ok_json(d, &["--trials", "6", "--seed", "4", "verify-theorem", "ranksep"]);
    let b = ok_json(d, &["--trials", "6", "--seed", "4", "verify-theorem", "ranksep"]);
    assert_eq!(a, b);
    assert_eq!(a["passed"], true);
    assert_eq!(a["config"]["seed"], 4);
}

#[test]
fn oracle_finds_planted_congruence() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write_pair(d, "p.json", 3, 1, 2);
    let v = ok_json(d, &["oracle", "congruence", "p.json", "p.json"]);
    assert_eq!(v["found"], true);
    assert_eq!(v["search_space_size"], 2);
    write_pair(d, "q.json", 3, 1, 1);
    let v = ok_json(d, &["oracle", "congruence", "p.json", "q.json", "--full-scan", "--no-fast-reject"]);
    assert_eq!(v["found"], false);
}

#[test]
fn operational_errors_exit_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(!wildred(d, &["--field", "9", "gen", "pair"]).status.success());
    assert!(!wildred(d, &["verify", "missing.json"]).status.success());
    assert!(!wildred(d, &["verify-theorem", "nonsense"]).status.success());
}
