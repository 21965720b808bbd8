use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_negcurve"));
    cmd.args(args).arg("--quiet");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args, &[]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).expect("json report");
    assert_eq!(v["schema"], "negcurve-report/1");
    assert_eq!(v["result"]["source"], "computed");
    v
}

#[test]
fn config_show_char7() {
    let v = json(&["config", "show", "--preset", "klein-char7"]);
    assert_eq!(v["result"]["counts"], serde_json::json!([21, 21, 28]));
    assert_eq!(v["field"]["characteristic"], 7);
}

#[test]
fn config_show_klein_checks_orbits() {
    let v = json(&["config", "show", "--preset", "klein"]);
    assert_eq!(v["result"]["orbits"]["group_order"], 168);
    assert_eq!(v["verified"], true);
}

#[test]
fn wiman_series_example() {
    let v = json(&["series", "--preset", "wiman", "--d", "90", "--m4", "4", "--m3", "8"]);
    assert_eq!((v["result"]["dim"].as_u64(), v["result"]["edim"].as_u64()), (Some(1), Some(0)));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["config", "show", "--preset", "klein-char7", "--field", "exact"][..],
        &["series", "--preset", "klein", "--d", "18", "--m5", "1"],
        &["series", "--preset", "klein", "--d", "18", "--bogus"],
        &["negsearch", "--preset", "klein", "--split"],
        &["golden", "--suite", "nope"],
        &["config", "show", "--field", "modp:11"],
    ] {
        assert_eq!(run(args, &[]).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn negsearch_is_deterministic_across_worker_counts() {
    let args = ["negsearch", "--preset", "klein", "--d-max", "60"];
    let a = run(&args, &[("NEGCURVE_WORKERS", "1")]);
    let b = run(&args, &[("NEGCURVE_WORKERS", "4")]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    let ledger: Vec<&str> = v["result"]["ledger"].as_array().unwrap().iter().map(|c| c["class"].as_str().unwrap()).collect();
    assert_eq!(ledger, ["21H - 4E4 - 3E3", "18H - 4E4", "42H - 8E3"]);
}

#[test]
fn waldschmidt_reports() {
    let v = json(&["waldschmidt", "--preset", "wiman"]);
    assert_eq!(v["result"]["lower"], v["result"]["upper"]);
    assert_eq!(v["result"]["exact"], true);
    let v = json(&["waldschmidt", "--preset", "klein", "--d-max", "60"]);
    assert_eq!(v["result"]["upper"], "13/2");
}

#[test]
fn char7_containment_failure() {
    let v = json(&["fatideal", "contain", "--preset", "klein-char7", "--m", "3", "--r", "2", "--to", "24"]);
    assert_eq!(v["result"]["outcome"], serde_json::json!({ "kind": "not-contained", "degree": 21 }));
    let v = json(&["fatideal", "generators", "--preset", "klein-char7"]);
    assert_eq!((v["result"]["alpha"].as_u64(), v["result"]["omega"].as_u64()), (Some(8), Some(9)));
}

#[test]
fn klein_generators_match_minors() {
    let v = json(&["fatideal", "generators", "--preset", "klein", "--polys"]);
    assert_eq!(v["result"]["jacobian_minors"]["equals_ideal_piece"], true);
    assert_eq!(v["result"]["generators"].as_array().unwrap().len(), 3);
}

#[test]
fn golden_klein_core_passes() {
    let v = json(&["golden", "--suite", "klein-core"]);
    assert_eq!(v["result"]["passed"], v["result"]["total"]);
}

#[test]
fn text_format() {
    let out = run(&["series", "--preset", "klein", "--d", "18", "--m4", "4", "--format", "text"], &[]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "result.dim = 1"), "{text}");
}
