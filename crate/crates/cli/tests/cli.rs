//! End-to-end command tests: exit codes, deterministic output, and the
//! JSON report schema.

use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dehnscope"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn classify_corpus_exponents_and_exit_codes() {
    for (file, want) in [("gamma1.graph", "3"), ("gamma2.graph", "4"), ("gamma3.graph", "2"), ("p4.graph", "1"), ("k3.graph", "2")] {
        let out = run(&["classify", data(file).to_str().unwrap()]);
        assert!(out.status.success(), "{file}");
        let text = String::from_utf8(out.stdout).unwrap();
        assert!(
            text.contains(&format!("exponent: {want}")),
            "{file}: {text}"
        );
    }
    let out = run(&["classify", data("c4.graph").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "refuted graphs exit 2");
}

#[test]
fn classify_output_is_byte_identical_across_runs() {
    let args = ["classify", "--json"];
    let f = data("gamma2.graph");
    let a = stdout_of(&[args[0], f.to_str().unwrap(), args[1]]);
    let b = stdout_of(&[args[0], f.to_str().unwrap(), args[1]]);
    assert_eq!(a, b);
    assert!(!a.is_empty());
}

#[test]
fn json_reports_carry_the_schema_fields() {
    let f = data("gamma1.graph");
    let text = stdout_of(&["classify", f.to_str().unwrap(), "--json"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["command"], "classify");
    assert!(v["input"]["path"].as_str().unwrap().ends_with("gamma1.graph"));
    assert_eq!(v["input"]["sha256"].as_str().unwrap().len(), 64);
    assert!(v["version"].is_string());
    assert_eq!(v["result"]["exponent"], 3);

    // The result payload round-trips through the library's report type.
    let report: dehnscope_core::classify::ClassificationReport =
        serde_json::from_value(v["result"].clone()).unwrap();
    assert_eq!(report.exponent, 3);
    assert!(report.cat0_obstructed);
    assert!(report.d1_status.is_verified());
}

#[test]
fn present_counts() {
    let text = stdout_of(&["present", data("k3.graph").to_str().unwrap()]);
    assert_eq!(text.matches("gen: ").count(), 2);
    assert_eq!(text.matches("rel: ").count(), 1);

    let text = stdout_of(&["present", data("p4.graph").to_str().unwrap()]);
    assert_eq!(text.matches("gen: ").count(), 3);
    assert_eq!(text.matches("rel: ").count(), 0);

    let text = stdout_of(&["present", data("gamma1.graph").to_str().unwrap()]);
    assert_eq!(text.matches("gen: ").count(), 5);
    assert_eq!(text.matches("rel: ").count(), 6);
}

#[test]
fn reducible_flags_cones() {
    let text = stdout_of(&["reducible", data("gamma3.graph").to_str().unwrap()]);
    assert!(!text.is_empty());
    for line in text.lines() {
        assert!(line.contains("kind=cone"), "{line}");
    }
}

#[test]
fn pushdown_prints_balanced_word_with_affixes() {
    let text = stdout_of(&[
        "pushdown",
        data("k3.graph").to_str().unwrap(),
        "--word",
        "a:b a:b",
    ]);
    assert!(text.contains("pushdown: a b' a b' b a' b a'"), "{text}");
    assert!(text.contains("length: 8"));
}

#[test]
fn wordprob_decides_equality() {
    let f = data("p4.graph");
    let text = stdout_of(&["wordprob", f.to_str().unwrap(), "--word", "a b", "--word", "b a"]);
    assert!(text.contains("equal: true"));
    let text = stdout_of(&["wordprob", f.to_str().unwrap(), "--word", "a c", "--word", "c a"]);
    assert!(text.contains("equal: false"));
}

#[test]
fn witness_reports_null_homotopic_length() {
    let text = stdout_of(&[
        "witness",
        data("gamma1.graph").to_str().unwrap(),
        "--n",
        "2",
    ]);
    assert!(text.contains("null_homotopic: true"), "{text}");
    // |w_n| = 8 n (k + l) with k = 2, l = 6, n = 2.
    assert!(text.contains("w_length: 128"), "{text}");
}

#[test]
fn flagcheck_reports_h1() {
    let text = stdout_of(&["flagcheck", data("c4.graph").to_str().unwrap()]);
    assert!(text.contains("h1: Z"), "{text}");
    assert!(text.contains("status: refuted"));

    let text = stdout_of(&["flagcheck", data("gamma2.graph").to_str().unwrap()]);
    assert!(text.contains("h1: trivial"));
    assert!(text.contains("status: verified"));
}

#[test]
fn parse_errors_exit_one() {
    let dir = tempdir();
    let bad = dir.join("bad.graph");
    std::fs::write(&bad, "vertices: A B\nA A\n").unwrap();
    let out = run(&["classify", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn directory_classification_is_ordered() {
    let dir = tempdir();
    for (name, body) in [
        ("a_tree.graph", "vertices: x y\nx y\n"),
        ("b_k3.graph", "vertices: a b c\na b\na c\nb c\n"),
    ] {
        std::fs::write(dir.join(name), body).unwrap();
    }
    let one = stdout_of(&["classify", dir.to_str().unwrap()]);
    let jobs = stdout_of(&["classify", dir.to_str().unwrap(), "--jobs", "2"]);
    assert_eq!(one, jobs, "parallel output matches sequential");
    let first = one.find("a_tree.graph").unwrap();
    let second = one.find("b_k3.graph").unwrap();
    assert!(first < second);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn pi1_budget_environment_override() {
    // A tiny budget starves the simplifier; classification reports the
    // unverified status with exit code 3.
    let out = Command::new(env!("CARGO_BIN_EXE_dehnscope"))
        .args(["classify", data("gamma2.graph").to_str().unwrap()])
        .env("DEHNSCOPE_PI1_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

fn tempdir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dehnscope-test-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
