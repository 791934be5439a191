//! End-to-end tests of the command-line interface: exit-code contract,
//! format round trips, and output determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hitchin-monodromy"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf8 stderr")
}

fn tmp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!(
        "hitchin-monodromy-test-{}-{name}",
        std::process::id()
    ));
    p
}

#[test]
fn graph_genus_2_is_rejected_with_exit_2() {
    let out = run(&["graph", "--genus", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("genus >= 3 required"));
}

#[test]
fn graph_json_has_expected_counts_and_round_trips() {
    let out = run(&["graph", "--genus", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed["vertices"], 8);
    assert_eq!(parsed["edges"].as_array().unwrap().len(), 16);
    assert_eq!(parsed["faces"].as_array().unwrap().len(), 8);

    // feeding the export back through --graph-file reproduces it bit-exactly
    let path = tmp_path("roundtrip.json");
    std::fs::write(&path, &text).unwrap();
    let back = run(&["graph", "--graph-file", path.to_str().unwrap()]);
    assert_eq!(back.status.code(), Some(0));
    assert_eq!(stdout(&back), text);
    std::fs::remove_file(&path).ok();
}

#[test]
fn graph_dot_is_undirected_with_labels() {
    let out = run(&["graph", "--genus", "4", "--format", "dot"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("graph "));
    assert!(!text.contains("digraph"));
    assert!(text.contains("label=\"u3\""));
}

#[test]
fn verify_genus_3_passes_with_exit_0() {
    let out = run(&["verify", "--genus", "3"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["pass"].as_bool().unwrap()));
}

#[test]
fn verify_checks_filter_runs_only_coxeter() {
    let out = run(&["verify", "--genus", "3", "--checks", "coxeter"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let names: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(
        names,
        vec!["coxeter_involutions", "coxeter_commuting", "coxeter_braid"]
    );
}

#[test]
fn verify_unknown_check_group_is_invalid_input() {
    let out = run(&["verify", "--genus", "3", "--checks", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn corrupted_graph_file_fails_verification_with_named_invariant() {
    let good = stdout(&run(&["graph", "--genus", "4"]));
    let mut doc: serde_json::Value = serde_json::from_str(&good).unwrap();
    doc["edges"][3]["ends"] = serde_json::json!([1, 7]);
    let path = tmp_path("corrupt.json");
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();

    let out = run(&["verify", "--graph-file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let failed: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| !c["pass"].as_bool().unwrap())
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(!failed.is_empty());
    assert!(stderr(&out).contains("failed:"));
    std::fs::remove_file(&path).ok();
}

#[test]
fn unparseable_graph_file_is_invalid_input() {
    let path = tmp_path("garbage.json");
    std::fs::write(&path, "not json at all").unwrap();
    let out = run(&["verify", "--graph-file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_file(&path).ok();
}

#[test]
fn orbits_enumerate_genus_3_counts_66() {
    let out = run(&["orbits", "--genus", "3", "--enumerate"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["orbit_count"], "66");
    assert_eq!(report["orbits"].as_array().unwrap().len(), 66);
}

#[test]
fn orbits_enumerate_large_genus_is_guarded() {
    let out = run(&["orbits", "--genus", "7", "--enumerate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--classify"));
}

#[test]
fn orbits_classify_large_genus_works() {
    let out = run(&["orbits", "--genus", "7", "--classify"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    // 2^14 + 6
    assert_eq!(report["orbit_count"], "16390");
}

#[test]
fn components_genus_3_and_4() {
    let out = run(&["components", "--genus", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["as_complex"], "66");
    assert_eq!(doc["full_real"], "131");
    assert!(doc["enumeration_cross_check"]
        .as_str()
        .unwrap()
        .contains("agrees"));

    let out = run(&["components", "--genus", "4"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["as_complex"], "259");
    assert_eq!(doc["full_real"], "517");
}

#[test]
fn components_genus_2_reports_formulas_with_flag() {
    let out = run(&["components", "--genus", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["as_complex"], "17");
    assert_eq!(doc["full_real"], "33");
    assert!(doc["enumeration_cross_check"]
        .as_str()
        .unwrap()
        .contains("skipped"));
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        vec!["graph", "--genus", "5"],
        vec!["verify", "--genus", "3"],
        vec!["orbits", "--genus", "4", "--enumerate"],
        vec!["components", "--genus", "6"],
    ] {
        let first = stdout(&run(&args));
        let second = stdout(&run(&args));
        assert_eq!(first, second, "args: {args:?}");
    }
}

#[test]
fn orbit_output_is_schedule_independent() {
    let single = bin()
        .args(["orbits", "--genus", "4", "--enumerate"])
        .env("HITCHIN_MONODROMY_THREADS", "1")
        .output()
        .unwrap();
    let multi = bin()
        .args(["orbits", "--genus", "4", "--enumerate"])
        .env("HITCHIN_MONODROMY_THREADS", "4")
        .output()
        .unwrap();
    assert_eq!(single.status.code(), Some(0));
    assert_eq!(multi.status.code(), Some(0));
    assert_eq!(stdout(&single), stdout(&multi));
}

#[test]
fn report_bundles_everything() {
    let out = run(&["report", "--genus", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["command"], "report");
    assert!(report["data"]["orbits"]["orbit_count"] == "66");
    assert!(report["data"]["components"]["full_real"] == "131");
    let names: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"component_count_consistency"));
    assert!(names.contains(&"kernel_rank"));
}

#[test]
fn generators_json_lists_every_edge() {
    let out = run(&["generators", "--genus", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let gens = doc["generators"].as_array().unwrap();
    assert_eq!(gens.len(), 16);
    assert_eq!(gens[0]["label"], "l1");
    assert_eq!(gens[0]["matrix_rows"].as_array().unwrap().len(), 16);
    // every transposition swaps exactly two vertices
    for g in gens {
        let t = g["transposition"].as_str().unwrap();
        assert!(t.starts_with('(') && t.ends_with(')'));
    }
}

#[test]
fn out_flag_writes_file_instead_of_stdout() {
    let path = tmp_path("out.json");
    let out = run(&[
        "components",
        "--genus",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.contains("\"as_complex\": \"66\""));
    std::fs::remove_file(&path).ok();
}
