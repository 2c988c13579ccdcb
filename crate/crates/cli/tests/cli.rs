use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn posetop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_posetop"))
        .args(args)
        .env_remove("POSETOP_FORMAT")
        .env_remove("POSETOP_OUT")
        .env_remove("POSETOP_BUDGET")
        .env_remove("POSETOP_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn fixtures() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    let out = posetop(&["fixtures", "write", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    dir
}

fn path(dir: &Path, rest: &str) -> String {
    dir.join(rest).to_str().unwrap().to_owned()
}

#[test]
fn batch_over_shipped_fixtures_matches_manifests() {
    let dir = fixtures();
    let out = posetop(&["verify", "--batch", dir.path().to_str().unwrap()]);
    let report = json(&out);
    assert_eq!(out.status.code(), Some(0), "{report:#}");
    let entries = report["fixtures"].as_array().unwrap();
    assert_eq!(entries.len(), 16);
    assert!(entries.iter().all(|e| e["matches"] == true));
    let refutation = entries
        .iter()
        .find(|e| e["fixture"] == "refutation")
        .unwrap();
    assert_eq!(refutation["status"], "refuted");
}

#[test]
fn refutation_exits_one_and_example_certifies() {
    let dir = fixtures();
    let out = posetop(&["verify", "thm-a", &path(dir.path(), "refutation")]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["status"], "refuted");

    let out = posetop(&[
        "verify",
        "cor-completion",
        &path(dir.path(), "example-3-12"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["result"]["f_vector"], serde_json::json!([2, 2]));
    let certs = report["certificates"].as_array().unwrap();
    assert!(!certs.is_empty());
    assert!(certs.iter().all(|c| c["replayed"] == true));
    assert_eq!(report["inputs"].as_array().unwrap().len(), 2);
    assert_eq!(report["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn input_errors_exit_three_with_a_position() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "a < b\nb < < c\n").unwrap();
    let out = posetop(&["core", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let report = json(&out);
    assert_eq!(report["status"], "error");
    assert!(report["error"]["message"]
        .as_str()
        .unwrap()
        .contains("line 2, column 5"));

    let out = posetop(&["verify", "no-such-theorem", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let out = posetop(&["homology", &path(dir.path(), "missing.txt")]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn budget_exhaustion_is_unknown() {
    let dir = fixtures();
    let poset = path(dir.path(), "collapsible-not-contractible/poset.txt");
    let out = posetop(&["--budget", "1", "collapse", &poset]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["status"], "unknown");

    let out = posetop(&["collapse", &poset]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["certificates"][0]["replayed"], true);
}

#[test]
fn homology_of_rp2_and_formats() {
    let dir = fixtures();
    let rp2 = path(dir.path(), "rp2/complex.txt");
    let out = posetop(&["homology", &rp2]);
    assert!(out.status.success());
    let report = json(&out);
    assert_eq!(
        report["result"]["degrees"][1]["torsion"],
        serde_json::json!([2])
    );

    let out = posetop(&["--format", "dot", "homology", &rp2]);
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("graph "));

    let out = Command::new(env!("CARGO_BIN_EXE_posetop"))
        .args(["homology", &rp2])
        .env("POSETOP_FORMAT", "text")
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("Z/2"), "{text}");
}

#[test]
fn out_flag_writes_the_report() {
    let dir = fixtures();
    let target = dir.path().join("report.json");
    let out = posetop(&[
        "--out",
        target.to_str().unwrap(),
        "cylinder",
        "verify-a",
        &path(dir.path(), "quillen-map"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(target).unwrap()).unwrap();
    assert_eq!(report["status"], "certified");
    assert_eq!(report["inputs"].as_array().unwrap().len(), 3);
}

#[test]
fn mapper_needs_a_seed_for_samples() {
    let out = posetop(&["mapper", "--sample", "circle"]);
    assert_eq!(out.status.code(), Some(3));

    let out = posetop(&["--seed", "2", "mapper", "--sample", "circle"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    let h = &report["result"]["homology"];
    assert_eq!(h["completion"]["degrees"][1]["betti"], 1);
    assert_eq!(h["nerve"]["degrees"].as_array().unwrap().len(), 1);
}

#[test]
fn mapper_reads_the_shipped_sample() {
    let dir = fixtures();
    let out = posetop(&[
        "--format",
        "text",
        "mapper",
        &path(dir.path(), "circle-sample/points.csv"),
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("completion betti: [1, 1]"), "{text}");
    assert!(text.contains("nerve betti: [1]"), "{text}");
}

#[test]
fn fixtures_check_detects_edits() {
    let dir = fixtures();
    let root = dir.path().to_str().unwrap();
    assert_eq!(posetop(&["fixtures", "check", root]).status.code(), Some(0));
    std::fs::write(dir.path().join("point/poset.txt"), "q\n").unwrap();
    let out = posetop(&["fixtures", "check", root]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout).unwrap().contains("point"));
}

#[test]
fn nerve_and_reduce_commands() {
    let dir = fixtures();
    let out = posetop(&[
        "nerve",
        "--emit",
        "completion",
        &path(dir.path(), "quasi-good-circle"),
    ]);
    assert!(out.status.success());
    let report = json(&out);
    assert_eq!(report["result"]["classification"]["status"], "QuasiGood");

    let out = posetop(&[
        "reduce",
        "--kind",
        "beat",
        &path(dir.path(), "collapse-to-source/source.txt"),
    ]);
    assert!(out.status.success());
    assert_eq!(
        json(&out)["result"]["remaining"].as_array().unwrap().len(),
        1
    );
}
