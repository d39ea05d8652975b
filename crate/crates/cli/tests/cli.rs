use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lieverma")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let out = run(&all);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn assert_no_floats(v: &Value) {
    match v {
        Value::Number(n) => assert!(n.is_i64() || n.is_u64(), "float in report: {n}"),
        Value::Array(a) => a.iter().for_each(assert_no_floats),
        Value::Object(o) => o.values().for_each(assert_no_floats),
        _ => {}
    }
}

#[test]
fn root_system_a2_lists_three_positive_roots() {
    let v = json(&["root-system", "--type", "A2"]);
    assert_eq!(v["schema"], 1);
    let roots = v["result"]["positive_roots"].as_array().unwrap();
    let heights: Vec<i64> = roots.iter().map(|r| r["height"].as_i64().unwrap()).collect();
    assert_eq!(heights, vec![1, 1, 2]);
    assert_eq!(v["result"]["delta"][0]["value"], "1/1");
    assert_eq!(v["config"]["type"], "A2");
    assert!(v["versions"]["lieverma"].is_string());
    assert_no_floats(&v);
}

#[test]
fn keys_are_sorted() {
    let out = run(&["root-system", "--json"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let top: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("  \"") && !l.starts_with("   "))
        .map(|l| l.trim().split('"').nth(1).unwrap())
        .collect();
    let mut sorted = top.clone();
    sorted.sort();
    assert_eq!(top, sorted);
}

#[test]
fn sl2_extract_at_height_two() {
    let v = json(&["verma", "extract", "--lambda", "3", "--mu-height", "2"]);
    let ex = v["result"]["extractions"].as_array().unwrap();
    assert_eq!(ex.len(), 1);
    assert_eq!(ex[0]["height"], 2);
    assert_eq!(ex[0]["converged"], true);
    let terms = ex[0]["component"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["basis"], serde_json::json!([2]));
    assert!(ex[0]["residual_gauges"].as_array().unwrap().len() > 1);
    assert_no_floats(&v);
}

#[test]
fn verma_act_matches_sl2_formula() {
    // e f^2 v = 2 (m - 1) f v for M(m)
    let v = json(&["verma", "act", "--lambda", "5", "--element", "e1", "--basis", "2"]);
    let terms = v["result"]["image"]["terms"].as_array().unwrap();
    assert_eq!(terms[0]["basis"], serde_json::json!([1]));
    assert_eq!(terms[0]["coefficient"]["value"], "8/1");
    assert_eq!(terms[0]["coefficient"]["valuation"], 0);
}

#[test]
fn sl2_submodule_lattice() {
    let v = json(&["verma", "submodules", "--lambda", "2", "--height-cap", "8"]);
    assert_eq!(v["result"]["lattice"]["length"], 2);
    assert_eq!(v["result"]["simple_quotient"]["dim"], 3);
    let v = json(&["verma", "submodules", "--lambda", "1/2", "--height-cap", "8"]);
    assert_eq!(v["result"]["lattice"]["length"], 1);
}

#[test]
fn ideal_commands_report_checks() {
    let v = json(&["ideals", "duflo-check", "--lambda", "1", "--degree-cap", "5"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["result"]["operation"], "duflo_check");
    assert!(v["result"]["checks"].as_array().unwrap().iter().all(|c| c["status"] != "fail"));
    let v = json(&["ideals", "controller-check", "--lambda", "2", "--ideal", "simple", "--degree-cap", "6"]);
    assert_eq!(v["passed"], true);
    let v = json(&["ideals", "annihilator", "--lambda", "1", "--degree-cap", "4", "--height-cap", "10"]);
    assert_eq!(v["result"]["matches_explicit_matrices"], true);
    assert_eq!(v["result"]["exactness"], "exact");
    let v = json(&["ideals", "closure", "--generator", "e1", "--degree-cap", "3"]);
    assert!(v["result"]["exactness"]["truncated_subset"].is_object());
}

#[test]
fn verify_all_is_deterministic() {
    let args = ["verify-all", "--seed", "7", "--json"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 7);
    assert_eq!(v["result"]["total"], 10);
    assert_eq!(v["result"]["passed"], 10);
    assert_no_floats(&v);
}

#[test]
fn thread_cap_does_not_change_the_report() {
    let args = ["verify-all", "--seed", "3", "--only", "1,2", "--json"];
    let a = run(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_lieverma"))
        .args(args)
        .env("LIEVERMA_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["no-such-command"],
        vec!["root-system", "--type", "E8"],
        vec!["root-system", "--prime", "6"],
        vec!["verma", "weights", "--type", "A2", "--lambda", "1"],
        vec!["verma", "act", "--element", "e7"],
        vec!["verma", "act", "--lambda", "1/25", "--element", "h1"],
        vec!["ideals", "duflo-check", "--type", "B2"],
        vec!["verma", "weights", "--height-cap", "0"],
    ] {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn unknown_criterion_is_a_usage_error() {
    let out = run(&["verify-all", "--only", "11"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("criterion 11"));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.conf");
    std::fs::write(&path, "# desk run\ntype = A2\nlambda = 1,2\nheight_cap = 3\nprime = 7\n").unwrap();
    let p = path.to_str().unwrap();
    let v = json(&["verma", "weights", "--config", p, "--height-cap", "2"]);
    assert_eq!(v["config"]["type"], "A2");
    assert_eq!(v["config"]["prime"], 7);
    assert_eq!(v["config"]["height_cap"], 2);
    assert_eq!(v["config"]["lambda"][1]["value"], "2/1");
    std::fs::write(&path, "colour = blue\n").unwrap();
    assert_eq!(run(&["root-system", "--config", p]).status.code(), Some(2));
}
