use std::path::PathBuf;

use serde_json::Value;
use splitkit_cli::run;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["splitkit", "--json"];
    full.extend_from_slice(args);
    let out = run(&full);
    assert_eq!(out.code, 0, "{}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

#[test]
fn pants_report_values() {
    let v = json(&["orbifold", "analyze", &fixture("pants.txt")]);
    assert_eq!(v["chi"], "-1");
    assert_eq!(v["hyperbolic"], true);
    assert_eq!(v["small"], true);
    assert_eq!(v["provenance"]["tool_version"], env!("CARGO_PKG_VERSION"));
    assert!(v["verdicts"].as_array().unwrap().iter().all(|x| x["op"].is_string()));
}

#[test]
fn triangle_group_chi() {
    let v = json(&["orbifold", "analyze", &fixture("triangle237.txt")]);
    assert_eq!(v["chi"], "-1/42");
    assert_eq!(v["small"], true);
}

#[test]
fn rigid_report_text() {
    let out = run(["splitkit", "gbs", "report", &fixture("bs23.txt")]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("rigid; T_co = T_J"), "{}", out.stdout);
    assert!(out.stdout.contains("unique reduced JSJ tree; T_co = T_J"));
}

#[test]
fn solvable_report() {
    let v = json(&["gbs", "report", &fixture("bs16.txt")]);
    assert_eq!(v["elementary"], "BS(1,6)");
    assert_eq!(v["compatibility"], "D_co trivial");
}

#[test]
fn length_with_named_and_literal_words() {
    let v = json(&["gbs", "length", &fixture("m3.txt"), "--word", "tee", "--oracle", "12"]);
    assert_eq!(v["translation_length"], 4);
    assert_eq!(v["oracle"]["valid"], true);
    let v = json(&["gbs", "length", &fixture("bs23.txt"), "--word", "t[e] a[v] t[e]^-1"]);
    assert_eq!(v["translation_length"], 0);
    assert_eq!(v["modular"], "1");
}

#[test]
fn quotient_of_the_four_cycle() {
    let v = json(&["cylinders", "quotient", &fixture("exemple.txt")]);
    assert_eq!(v["v0"], 4);
    assert_eq!(v["v1"], 1);
    assert_eq!(v["edge_count"], 4);
    assert_eq!(v["bipartite"], true);
    assert!(!v["hypotheses"].as_array().unwrap().is_empty());
}

#[test]
fn dot_export() {
    let out = run(["splitkit", "export", "dot", &fixture("bs24.txt")]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("digraph"));
    assert!(out.stdout.contains("label=\"2,4\""));
    assert_eq!(out.stdout.matches("->").count(), 1);
}

#[test]
fn enumerate_zero_is_empty() {
    let v = json(&["orbifold", "enumerate", "--budget", "0"]);
    assert_eq!(v["count"], 0);
}

#[test]
fn search_budget_flag_is_recorded() {
    let v = json(&["--search-budget", "3", "lattice", "verify", &fixture("m3.txt"), "--words", "20"]);
    assert_eq!(v["search_budget"], 3);
    assert_eq!(v["pairs_checked"], 28);
    assert_eq!(v["provenance"]["seed"], 1);
}

#[test]
fn input_errors_exit_1() {
    let out = run(["splitkit", "frobnicate"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("Usage"));
    assert!(out.stdout.is_empty());

    let out = run(["splitkit", "gbs", "report", &fixture("bad_label.txt")]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("zero label"));

    let out = run(["splitkit", "orbifold", "analyze", &fixture("bs23.txt")]);
    assert_eq!(out.code, 1);

    let out = run(["splitkit", "orbifold", "analyze", "/nonexistent/file.txt"]);
    assert_eq!(out.code, 1);
}

#[test]
fn seeds_change_samples_only() {
    let a = json(&["--seed", "5", "lattice", "verify", &fixture("m3.txt"), "--words", "10"]);
    let b = json(&["--seed", "5", "lattice", "verify", &fixture("m3.txt"), "--words", "10"]);
    let c = json(&["--seed", "6", "lattice", "verify", &fixture("m3.txt"), "--words", "10"]);
    assert_eq!(a, b);
    assert_eq!(c["provenance"]["seed"], 6);
    assert_eq!(a["provenance"]["input_sha256"], c["provenance"]["input_sha256"]);
}
