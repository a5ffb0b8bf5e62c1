use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_affine-avoid"))
        .args(args)
        .env_remove("AFFINE_AVOID_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&full)).unwrap()
}

#[test]
fn inspect_matches_golden_file() {
    let got = stdout(&["inspect", "-p", "24351", "-n", "3", "--pi", "2,3,2,2,1"]);
    assert_eq!(got, include_str!("golden/inspect_24351.txt"));
}

#[test]
fn inspect_lists_single_assignment_for_321() {
    let v = json(&["inspect", "-p", "321", "-n", "3"]);
    assert_eq!(v["assignments"], serde_json::json!(["3,2,1"]));
}

#[test]
fn inspect_flags_warning_pattern_infeasible() {
    let v = json(&["inspect", "-p", "8,2,1,5,6,3,9,11,7,10,4", "-n", "3"]);
    assert_eq!(v["assignments"].as_array().unwrap().len(), 1);
    assert_eq!(v["reports"][0]["integer_feasible"], Value::Bool(false));
}

#[test]
fn series_reports_periodic_321() {
    let v = json(&["series", "-p", "321", "-n", "3"]);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["behavior"]["kind"], "EventuallyPeriodic");
    assert_eq!(v["avoiders"]["text"], "(1 + 2*x + 3*x^2) / (1 - x)");
}

#[test]
fn series_of_finite_pattern_is_polynomial() {
    let v = json(&["series", "-p", "12", "-n", "3"]);
    assert_eq!(v["behavior"]["kind"], "EventuallyZero");
}

#[test]
fn series_at_n2_is_bott() {
    let v = json(&["series", "-p", "4321", "-n", "2"]);
    assert_eq!(v["avoiders"]["text"], "(1 + x) / (1 - x)");
}

#[test]
fn classify_examples() {
    for (p, n, kind) in [
        ("321", "3", "Periodic"),
        ("24351", "3", "Periodic"),
        ("4321", "4", "Unbounded"),
    ] {
        let v = json(&["classify", "-p", p, "-n", n]);
        assert_eq!(v["kind"], kind, "{p}");
        assert_eq!(v["agreement"], Value::Bool(true), "{p}");
    }
}

#[test]
fn enumerate_columns_sum_to_bott() {
    let text = stdout(&["enumerate", "-p", "321", "-n", "3", "-L", "10"]);
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(rdr.headers().unwrap(), vec!["length", "avoiders", "containers", "bott"]);
    let rows: Vec<Vec<u64>> = rdr
        .records()
        .map(|r| r.unwrap().iter().map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 11);
    for r in rows {
        assert_eq!(r[1] + r[2], r[3]);
    }
}

#[test]
fn enumerate_length_zero_is_identity() {
    let text = stdout(&["enumerate", "-p", "21", "-n", "2", "-L", "0"]);
    assert_eq!(text, "length,avoiders,containers,bott\n0,1,0,1\n");
}

#[test]
fn enumerate_agrees_with_series() {
    let series = json(&["series", "-p", "2431", "-n", "3"]);
    let verified = series["verified_to"].as_u64().unwrap().to_string();
    let table = stdout(&["series", "-p", "2431", "-n", "3", "--format", "csv"]);
    let brute = stdout(&["enumerate", "-p", "2431", "-n", "3", "-L", &verified]);
    assert_eq!(table, brute);
}

#[test]
fn output_does_not_depend_on_threads() {
    let one = stdout(&["--threads", "1", "series", "-p", "24351", "-n", "3", "--format", "json"]);
    let four = stdout(&["--threads", "4", "series", "-p", "24351", "-n", "3", "--format", "json"]);
    assert_eq!(one, four);
}

#[test]
fn invalid_input_exits_with_one() {
    assert_eq!(run(&["series", "-p", "3,3", "-n", "3"]).status.code(), Some(1));
    assert_eq!(run(&["series", "-p", "321", "-n", "1"]).status.code(), Some(1));
    assert_eq!(run(&["series"]).status.code(), Some(1));
    assert_eq!(run(&["check", "--only", "nothing"]).status.code(), Some(1));
}

#[test]
fn check_selected_criteria() {
    let text = stdout(&["check", "--only", "bott"]);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 2);
    let v = json(&["check", "--only", "3,5"]);
    assert_eq!(v["passed"], Value::Bool(true));
    assert_eq!(v["criteria"].as_array().unwrap().len(), 2);
}
