use std::path::PathBuf;
use std::process::{Command, Output};

use unipart::discretia::HomologyResult;
use unipart::{AnalysisReport, Verdict};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unipart")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn analyze_swap_in_u3() {
    let path = data("h3.json");
    let o = run(&["analyze", "--input", path.to_str().unwrap(), "--p", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let report: AnalysisReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(report.verdict.is_contractible());
    assert_eq!(report.schema_version, "1");
}

#[test]
fn analyze_is_byte_identical_across_runs() {
    let path = data("d8.json");
    let args = ["analyze", "--input", path.to_str().unwrap(), "--p", "2", "--verify"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let report: AnalysisReport = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(report.verdict, Verdict::ContractibleByMainTheorem);
    assert_eq!(serde_json::to_string_pretty(&report).unwrap() + "\n", stdout(&a));
}

#[test]
fn prime_from_file_and_conflicts() {
    let path = data("h3.json");
    assert_eq!(run(&["analyze", "--input", path.to_str().unwrap()]).status.code(), Some(0));
    let o = run(&["analyze", "--input", path.to_str().unwrap(), "--p", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let d8 = data("d8.json");
    assert_eq!(run(&["analyze", "--input", d8.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn domain_errors_are_json_on_stderr() {
    let path = data("d8.json");
    let o = run(&["analyze", "--input", path.to_str().unwrap(), "--p", "3"]);
    assert_eq!(o.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "NotAPGroup");
    let o = run(&["analyze", "--input", path.to_str().unwrap(), "--p", "2", "--closure-cap", "4"]);
    assert_eq!(o.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "CapExceeded");
}

#[test]
fn schema_errors_name_the_field() {
    let dir = std::env::temp_dir().join(format!("unipart-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\n  \"n\": 2,\n  \"m\": 4,\n  \"gens\": []\n}").unwrap();
    let o = run(&["analyze", "--input", bad.to_str().unwrap(), "--p", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let msg = String::from_utf8(o.stderr).unwrap();
    assert!(msg.contains("gens") && msg.contains("line 4"), "{msg}");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn discrete_table() {
    let o = run(&["discrete", "--n", "4", "--p", "2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let col = header.iter().position(|h| *h == "implication_holds").unwrap();
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 7);
    assert!(rows.iter().all(|r| r.rsplit(',').nth(header.len() - 1 - col) == Some("true")));
    let o = run(&["discrete", "--n", "9", "--p", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(run(&["discrete", "--n", "4", "--p", "4"]).status.code(), Some(2));
}

#[test]
fn l2_points() {
    let o = run(&["l2", "--re", "1", "--im", "0"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["class"], "IsolatedPoint");
    let o = run(&["l2", "--re", "0", "--im", "-3/2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["class"], "CircleComponent");
    let o = run(&["l2", "--axis"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["class"], "CircleComponent");
    assert_eq!(run(&["l2", "--re", "0", "--im", "0"]).status.code(), Some(1));
    assert_eq!(run(&["l2", "--re", "x", "--im", "0"]).status.code(), Some(2));
}

#[test]
fn homology_of_rp2() {
    let path = data("rp2.json");
    let o = run(&["homology", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let h: HomologyResult = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((h.betti(0), h.betti(1), h.torsion(1)), (1, 0, &[2][..]));
    assert_eq!(h.betti(2), 0);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["analyze"]).status.code(), Some(2));
}
