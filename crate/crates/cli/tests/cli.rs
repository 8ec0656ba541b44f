use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn quiver(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "quivers", name].iter().collect();
    path.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kacpoly"))
        .args(args)
        .env_remove("KACPOLY_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = run(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn record<'a>(report: &'a Value, gamma: &str) -> &'a Value {
    report["records"].as_array().unwrap().iter().find(|r| r["gamma"] == gamma).unwrap()
}

#[test]
fn kac_for_the_jordan_quiver() {
    let report = json(&["kac", "--quiver", &quiver("jordan.qv"), "--box", "3"]);
    let records = report["records"].as_array().unwrap();
    assert_eq!(records.len(), 3);
    for r in records {
        assert_eq!(r["a"], "q");
        assert_eq!(r["omega"], "q");
        assert_eq!(r["flags"]["parity"], true);
    }
    assert_eq!(report["conventions"]["pairing"], "sum-of-minima");
    assert_eq!(report["quiver_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn kac_for_the_kronecker_quiver() {
    let report = json(&["kac", "--quiver", &quiver("kronecker.qv"), "--box", "1,1"]);
    assert_eq!(record(&report, "(1,1)")["a"], "q + 1");
    assert_eq!(record(&report, "(1,0)")["a"], "1");
    assert_eq!(record(&report, "(1,1)")["generators"], serde_json::json!({"0": 1, "2": 1}));

    let text = stdout(&run(&["kac", "--quiver", &quiver("kronecker.qv"), "--box", "1,1"]));
    assert!(text.contains("(1,1)  q + 1"), "{text}");
    let tsv = stdout(&run(&["kac", "--quiver", &quiver("kronecker.qv"), "--box", "1,1", "--format", "tsv"]));
    assert!(tsv.lines().any(|l| l == "(1,1)\tq + 1\tq + 1\tm=0:1 m=2:1"), "{tsv}");
}

#[test]
fn loops_have_larger_kac_polynomials() {
    let report = json(&["kac", "--quiver", &quiver("loops2.qv"), "--box", "2"]);
    assert_eq!(record(&report, "(1)")["a"], "q^2");
    assert_eq!(record(&report, "(2)")["a"], "q^5 + q^3");
}

#[test]
fn malformed_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.qv");
    std::fs::write(&bad, "vertices: 1\narrow a 0 3\n").unwrap();
    let out = run(&["kac", "--quiver", bad.to_str().unwrap(), "--box", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let missing = dir.path().join("missing.qv");
    assert_eq!(run(&["kac", "--quiver", missing.to_str().unwrap(), "--box", "1"]).status.code(), Some(2));
    assert_eq!(run(&["kac", "--quiver", &quiver("a2.qv"), "--box", "1,1,1"]).status.code(), Some(2));
    assert_eq!(run(&["kac", "--quiver", &quiver("a2.qv"), "--box", "0,0"]).status.code(), Some(2));
}

#[test]
fn verify_passes_on_small_quivers() {
    let out = run(&["verify", "--quiver", &quiver("a2.qv"), "--box", "1,1", "--primes", "2,3"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("0 failed"));

    let report = json(&["verify", "--quiver", &quiver("kronecker.qv"), "--box", "2,2", "--primes", "2"]);
    assert_eq!(report["status"], "pass");
    assert!(report["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
    assert_eq!(record(&report, "(2,2)")["flags"]["oracle_checked_primes"], serde_json::json!([2]));
}

#[test]
fn verify_rejects_composite_primes() {
    let out = run(&["verify", "--quiver", &quiver("a2.qv"), "--box", "1,1", "--primes", "9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_reports_budget_overruns() {
    let out = run(&[
        "verify", "--quiver", &quiver("kronecker.qv"), "--box", "2,2", "--primes", "2", "--budget-end", "4",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));

    let out = Command::new(env!("CARGO_BIN_EXE_kacpoly"))
        .args(["verify", "--quiver", &quiver("kronecker.qv"), "--box", "2,2", "--primes", "2"])
        .env("KACPOLY_BUDGET", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn triple_of_the_jordan_quiver() {
    let out = run(&["triple", "--quiver", &quiver("jordan.qv")]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("arrow a~ 0 0\narrow w@0 0 0\n"), "{text}");
    assert!(text.contains("dW/da~ = w@0·a - a·w@0"), "{text}");

    let report = json(&["triple", "--quiver", &quiver("jordan.qv")]);
    assert_eq!(report["potential_terms"].as_array().unwrap().len(), 2);
    assert_eq!(report["cut"], serde_json::json!(["a~"]));
}

#[test]
fn triple_of_a2() {
    let report = json(&["triple", "--quiver", &quiver("a2.qv"), "--box", "1,1"]);
    assert_eq!(report["relations"]["a~"], "w@1·a - a·w@0");
    assert_eq!(report["tripled_quiver"], "vertices: 2\narrow a 0 1\narrow a~ 1 0\narrow w@0 0 0\narrow w@1 1 1\n");
    let shift = &report["shift"];
    assert_eq!(shift["gamma"], "(1,1)");
    assert!(shift["l"].is_i64() && shift["l_prime"].is_i64());
}

#[test]
fn triple_of_the_point_has_no_relations() {
    let report = json(&["triple", "--quiver", &quiver("point.qv")]);
    assert_eq!(report["relations"], serde_json::json!({}));
    assert_eq!(report["potential"], "0");
}

#[test]
fn strata_of_the_point() {
    let report = json(&["strata", "--quiver", &quiver("point.qv"), "--box", "2"]);
    let rows = report["strata"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(report["status"], "pass");
    assert_eq!(report["total"], rows.last().unwrap()["running_total"]);

    let report = json(&["strata", "--quiver", &quiver("point.qv"), "--box", "0"]);
    assert_eq!(report["strata"].as_array().unwrap().len(), 1);
    assert_eq!(report["total"], "1");
}

#[test]
fn strata_of_the_jordan_quiver() {
    let report = json(&["strata", "--quiver", &quiver("jordan.qv"), "--box", "1"]);
    let row = &report["strata"][0];
    assert_eq!(row["pi"], "{v0:[1]}");
    assert_eq!(row["arrow_pairing"], 1);
    assert_eq!(row["c_pi"], "q/(q - 1)");
    assert_eq!(report["total"], "q/(q - 1)");
}

#[test]
fn json_does_not_depend_on_threads() {
    for args in [
        vec!["kac", "--quiver", "kronecker.qv", "--box", "3,3"],
        vec!["verify", "--quiver", "kronecker.qv", "--box", "2,2", "--primes", "2"],
    ] {
        let path = quiver(args[2]);
        let mut base: Vec<&str> = args.clone();
        base[2] = &path;
        let with = |n: &'static str| {
            let mut a = base.clone();
            a.extend(["--format", "json", "--threads", n]);
            let out = run(&a);
            assert!(out.status.success());
            out.stdout
        };
        let one = with("1");
        assert_eq!(one, with("4"));
        // keys come out sorted at every level
        let text = String::from_utf8(one).unwrap();
        let value: Value = serde_json::from_str(&text).unwrap();
        fn sorted(v: &Value) -> bool {
            match v {
                Value::Object(m) => m.keys().zip(m.keys().skip(1)).all(|(a, b)| a < b) && m.values().all(sorted),
                Value::Array(a) => a.iter().all(sorted),
                _ => true,
            }
        }
        assert!(sorted(&value));
    }
}
