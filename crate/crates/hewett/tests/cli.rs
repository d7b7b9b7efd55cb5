use serde_json::Value;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hewett")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn profile_json() {
    let out = run(&["profile", "--p", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "profile");
    let invs: Vec<&str> = v["results"]["places"].as_array().unwrap().iter().map(|p| p["inv"].as_str().unwrap()).collect();
    assert_eq!(invs, ["1/6", "5/6"]);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn classify_flags_discrepancy_with_warning_status() {
    let out = run(&["classify"]);
    assert_eq!(out.status.code(), Some(3));
    let v = json(&out);
    let rows = v["results"]["rows"].as_array().unwrap();
    let row = |p: u64, m: u64| rows.iter().find(|r| r["p"] == p && r["m"] == m && r["alpha"] == 1).unwrap();
    for (p, m) in [(3, 1), (5, 1), (7, 1)] {
        assert_eq!(row(p, m)["verdict"], true);
    }
    assert_eq!(row(11, 1)["verdict"], false);
    assert!(row(3, 2)["note"].as_str().unwrap().contains("discrepancy"));
}

#[test]
fn small_classify_without_discrepancy_passes() {
    let out = run(&["classify", "--p-max", "7", "--m-max", "1", "--alpha-max", "1", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().next().unwrap().starts_with("p  m  alpha"));
}

#[test]
fn verify_passes_and_is_deterministic() {
    let args = ["verify", "--p", "5", "--samples", "5", "--seed", "42"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stdout));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["results"]["subgroup_order"], 80);
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    for n in ["isomorphism", "subgroup_unitary", "positivity", "dagger_antimultiplicative"] {
        assert!(names.contains(&n), "{n}");
    }
    let coeffs = &v["results"]["image_a"][0];
    assert_eq!(coeffs["conductor"], 20);
    assert_eq!(coeffs["coefficients"].as_array().unwrap().len(), 8);
}

#[test]
fn verify_seed_changes_samples_only() {
    let a = json(&run(&["verify", "--p", "3", "--samples", "3", "--seed", "1"]));
    let b = json(&run(&["verify", "--p", "3", "--samples", "3", "--seed", "2"]));
    assert_eq!(a["results"], b["results"]);
    assert_ne!(a["parameters"], b["parameters"]);
}

#[test]
fn hermitian_reports() {
    let v = json(&run(&["hermitian", "--p", "5"]));
    assert_eq!(v["results"]["norm_check"]["value"], "-4/1");
    let two = &v["results"]["places"][0];
    assert_eq!(two["place"], "2");
    assert_eq!(two["witt_index"], 1);
    let v = json(&run(&["hermitian", "--p", "7"]));
    assert!(v["results"]["places"].as_array().unwrap().iter().all(|p| p["witt_index"] == 3));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["hermitian", "--p", "11"]).status.code(), Some(2));
    assert_eq!(run(&["profile", "--p", "9"]).status.code(), Some(2));
    assert_eq!(run(&["verify"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--p-max", "100000"]).status.code(), Some(2));
}
