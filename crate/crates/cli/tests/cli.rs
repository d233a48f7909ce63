//! End-to-end tests of the binary: exit codes, JSON output shape, and the
//! bundled verification suites.

use std::path::PathBuf;
use std::process::{Command, Output};

fn spinverify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinverify"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn data_file(name: &str) -> String {
    let mut path = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    path.pop();
    path.push("core/data/betti");
    path.push(name);
    path.display().to_string()
}

#[test]
fn verify_all_passes_with_exit_zero() {
    let output = spinverify(&["verify", "all"]);
    assert!(output.status.success(), "{}", stdout(&output));
    assert!(stdout(&output).contains("pass"));
}

#[test]
fn verify_json_document_has_the_contract_shape() {
    let output = spinverify(&["--json", "verify", "arf"]);
    assert!(output.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&output)).expect("valid json");
    assert_eq!(doc["command"], "verify");
    assert_eq!(doc["pass"], true);
    let checks = doc["checks"].as_array().expect("checks array");
    assert!(!checks.is_empty());
    for check in checks {
        for field in ["name", "anchor", "expected", "got", "pass"] {
            assert!(check.get(field).is_some(), "missing field {field}");
        }
    }
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let output = spinverify(&["verify", "nonsense"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn window_violation_is_an_input_error() {
    let output = spinverify(&["strata", "3", "1"]);
    assert_eq!(output.status.code(), Some(2));
    let output = spinverify(&["boundary", "1", "1", "1"]);
    assert_eq!(output.status.code(), Some(2)); // empty moduli
}

#[test]
fn twist_count_mismatch_is_an_input_error() {
    let output = spinverify(&["boundary", "1", "2", "1"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn boundary_lists_the_eight_types() {
    let output = spinverify(&["boundary", "1", "3", "1", "1", "0"]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("8 boundary divisor types"));
    for label in [
        "A_irr", "B_irr", "A_{1,{}}", "B_{1,{}}", "Delta_{1,{1}}", "Delta_{1,{2}}", "A_{1,{3}}",
        "B_{1,{3}}",
    ] {
        assert!(text.contains(label), "missing {label} in\n{text}");
    }
}

#[test]
fn strata_counts_small_spaces() {
    let output = spinverify(&["strata", "1", "1"]);
    assert!(output.status.success());
    assert!(stdout(&output).contains("2 stable graph classes"));
}

#[test]
fn arf_reports_counts_and_orbits() {
    let output = spinverify(&["arf", "2"]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("10 even forms, 6 odd forms"));
    assert!(text.contains("orbit: size 10"));
}

#[test]
fn euler_evaluates_the_bundled_book() {
    let output = spinverify(&["euler"]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("chi_s12_bar"));
    assert!(text.contains("6/1"));
    assert!(text.contains("18/1"));

    let output = spinverify(&["euler", "chi_s13_bar"]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("chi_s13_bar"));
    assert!(!text.contains("chi_s12_open"));
}

#[test]
fn euler_missing_file_is_an_input_error() {
    let output = spinverify(&["euler", "/nonexistent/book.json"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn plan_flags_the_degree_one_discrepancy() {
    let output = spinverify(&["--json", "plan", "1", "2", "5"]);
    assert!(output.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    let bases = doc["results"]["base_cases"].as_array().unwrap();
    assert_eq!(bases.len(), 3);
    let flagged: Vec<_> = doc["results"]["reports"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["flagged"] == true)
        .collect();
    assert_eq!(flagged.len(), 1);
    assert_eq!(flagged[0]["g"], 0);
    assert_eq!(flagged[0]["n"], 4);
}

#[test]
fn betti_unique_and_ambiguous_files() {
    let output = spinverify(&["betti", &data_file("s13_h3.json")]);
    assert!(output.status.success());
    assert!(stdout(&output).contains("[1, 0, 8, 0, 8, 0, 1]"));

    // ambiguity is reported through exit code 1
    let output = spinverify(&["betti", &data_file("s13_h3_no_b0.json")]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stdout(&output).contains("ambiguous"));
}

#[test]
fn pic_rank_counts_generators() {
    let output = spinverify(&["pic-rank", "1", "2", "1", "1"]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("7 free generators"));
    assert!(text.contains("caveat"));
    assert!(text.contains("lambda, psi_1, psi_2"));
}

#[test]
fn quiet_mode_prints_nothing() {
    let output = spinverify(&["--quiet", "verify", "euler"]);
    assert!(output.status.success());
    assert!(stdout(&output).is_empty());
    assert!(output.stderr.is_empty());
}
