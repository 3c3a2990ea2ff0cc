use serde_json::{json, Value};
use slice_demo::{decompose, optimize, random, staircase};

fn call(s: String) -> Value {
    serde_json::from_str(&s).expect("exports return JSON")
}

const STAIRCASE: &str = "2 4\n6 0\n5 2\n2 4\n0 6\n";

#[test]
fn staircase_lists_maximal_standard_monomials() {
    let v = call(staircase(STAIRCASE, "Median"));
    assert_eq!(v["n"], 2);
    assert_eq!(v["msm"], json!([["1", "5"], ["4", "3"], ["5", "1"]]));
    assert!(v["stats"]["processed"].as_u64().unwrap() >= 1);
}

#[test]
fn decomposition_and_dual() {
    let v = call(decompose("2 3\n2 0\n1 1\n0 3\n", ""));
    assert_eq!(v["count"], 2);
    assert_eq!(v["components"], json!([["1", "3"], ["2", "1"]]));
    assert_eq!(v["dual"], json!([["1", "3"], ["2", "1"]]));
    assert_eq!(v["truncated"], false);
}

#[test]
fn optimization_reports_witness_or_infeasibility() {
    let v = call(optimize(STAIRCASE, "1,1", true));
    assert_eq!(v["feasible"], true);
    assert_eq!(v["value"], "7");
    let v = call(optimize("2 1\n3 0\n", "1,1", false));
    assert_eq!(v["feasible"], false);
    let v = call(optimize(STAIRCASE, "1", true));
    assert!(v["error"].is_string());
}

#[test]
fn random_text_feeds_back_in() {
    let v = call(random(3, 8, 9, 4));
    let text = v["text"].as_str().unwrap();
    assert!(text.starts_with("3 8\n"));
    let s = call(staircase(text, "Frob"));
    assert_eq!(s["redundant"], 0);
    assert!(call(random(1, 3, 2, 0))["error"].is_string());
}

#[test]
fn huge_exponents_survive_the_round_trip() {
    let v = call(staircase("1 1\n123456789012345678901234567890\n", ""));
    assert_eq!(v["msm"], json!([["123456789012345678901234567889"]]));
}
