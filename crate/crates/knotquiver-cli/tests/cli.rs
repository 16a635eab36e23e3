use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knotquiver")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn malformed_input_exits_with_two() {
    for args in [&["compute", "3/x"][..], &["compute", "4/2"], &["compute", "[1,2]"], &["compute"], &["oracle", "3/1", "--colors", "2..1"]] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
    assert_eq!(run(&["compute", "4/1", "--pipeline", "knot"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    for args in [&["compute", "[1,2,4]"][..], &["batch", "--max-crossings", "7", "--jobs", "3"], &["verify", "7/3"]] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}

#[test]
fn slope_and_cf_inputs_agree() {
    assert_eq!(json(&["compute", "13/3"]), json(&["compute", "--cf", "[1,2,4]"]));
    assert_eq!(json(&["compute", "--slope", "13/3"]), json(&["compute", "[1,2,4]"]));
}

#[test]
fn frames_and_conventions() {
    let raw = json(&["compute", "3/1", "--convention", "anti", "--frame", "raw"]);
    assert_eq!(raw["Q"], serde_json::json!([[3, 1, 1], [1, 1, 0], [1, 0, 0]]));
    assert_eq!(raw["q_vec"], serde_json::json!([-1, -3, 0]));
    let shifted = json(&["compute", "3/1", "--convention", "anti", "--frame", "-3"]);
    assert_eq!(shifted["Q"], serde_json::json!([[0, -2, -2], [-2, -2, -3], [-2, -3, -3]]));
    assert_eq!(shifted["a_vec"], serde_json::json!([2, 2, 4]));
    let checked = json(&["compute", "5/2", "--order", "2"]);
    assert_eq!(checked["verified_order"], 2);
}

#[test]
fn both_pipelines_and_verification() {
    let both = json(&["compute", "3/1", "--pipeline", "both"]);
    assert_eq!(both[0]["pipeline"], "knot");
    assert_eq!(both[1]["pipeline"], "link");
    let reports = json(&["verify", "9/4", "--pipeline", "both", "--order", "2"]);
    assert!(reports.as_array().unwrap().iter().all(|r| r["passed"] == true));
    let link = json(&["verify", "2/1"]);
    assert_eq!(link["matches"], serde_json::json!([true, true, true]));
}

#[test]
fn oracle_values() {
    let v = json(&["oracle", "3/1", "--colors", "1..1"]);
    assert_eq!(v["colors"][0]["value"], "q^-2*a^2 + q^2*a^2 - a^4");
    let jones = json(&["oracle", "1/1", "--colors", "0..3", "--jones"]);
    assert!(jones["colors"].as_array().unwrap().iter().all(|c| c["value"] == "1"));
}

#[test]
fn enumerate_lists_canonical_slopes() {
    let out = run(&["enumerate", "--max-crossings", "5"]);
    let text = String::from_utf8(out.stdout).unwrap();
    // 3_1, 5_1, 4_1, 5_2
    assert_eq!(text.lines().collect::<Vec<_>>(), ["3/1", "5/1", "5/2", "7/2"].map(String::from).to_vec());
}
