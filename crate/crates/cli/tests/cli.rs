//! End-to-end tests against the built binary: frozen outputs, exit codes,
//! and report round-trips.

use std::path::PathBuf;
use std::process::Command;

use heisenweyl_core::VerificationReport;

fn run(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_heisenweyl"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).expect("stdout is utf-8"),
        String::from_utf8(out.stderr).expect("stderr is utf-8"),
        out.status.code().unwrap_or(-1),
    )
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("heisenweyl-{}-{name}", std::process::id()))
}

#[test]
fn normalize_defining_relation() {
    let (out, _, code) = run(&["normalize", "y*x", "--system", "hpq"]);
    assert_eq!(code, 0);
    assert_eq!(out, "q*x*y + z\n");
}

#[test]
fn normalize_single_generator() {
    let (out, _, code) = run(&["normalize", "x", "--system", "hpq"]);
    assert_eq!(code, 0);
    assert_eq!(out, "x\n");
}

#[test]
fn normalize_reorders_a_square() {
    let (out, _, code) = run(&["normalize", "y*x^2"]);
    assert_eq!(code, 0);
    assert_eq!(out, "q^2*x^2*y + (q + p^-1)*x*z\n");
}

#[test]
fn normalize_localized_inverses() {
    let (out, _, code) = run(&["normalize", "z*x^-1", "--system", "local"]);
    assert_eq!(code, 0);
    assert_eq!(out, "p*x^-1*z\n");
    let (out, _, code) = run(&["normalize", "x^-1*x + z*z^-1", "--system", "local"]);
    assert_eq!(code, 0);
    assert_eq!(out, "2\n");
}

#[test]
fn normalize_weyl_presentations() {
    let (out, _, code) = run(&["normalize", "y*x", "--system", "gwa:hpq"]);
    assert_eq!(code, 0);
    assert_eq!(out, "c\n");
    let (out, _, code) = run(&["normalize", "x*y", "--system", "gwa:hpq"]);
    assert_eq!(code, 0);
    assert_eq!(out, "q^-1*c - q^-1*z\n");
    let (out, _, code) = run(&["normalize", "y*x", "--system", "gwa:apq"]);
    assert_eq!(code, 0);
    assert_eq!(out, "(-1/(p*q - 1))*z + (p*q/(p*q - 1))*w^-1\n");
}

#[test]
fn mul_matches_normalize_of_the_product() {
    let (out, _, code) = run(&["mul", "y", "x"]);
    assert_eq!(code, 0);
    assert_eq!(out, "q*x*y + z\n");
}

#[test]
fn commutator_outputs() {
    let (out, _, code) = run(&["commutator", "y", "x"]);
    assert_eq!(code, 0);
    assert_eq!(out, "(q - 1)*x*y + z\n");
    let (out, _, code) = run(&["commutator", "z", "x", "--system", "local"]);
    assert_eq!(code, 0);
    assert_eq!(out, "(-1 + p^-1)*x*z\n");
}

#[test]
fn eval_one_param_quantum_integer() {
    let (out, _, code) = run(&["eval", "[4]_{p,q}", "--spec", "oneparam:1,1"]);
    assert_eq!(code, 0);
    assert_eq!(out, "t^3 + t + t^-1 + t^-3\n");
}

#[test]
fn eval_root_of_unity_vanishing() {
    let (out, _, code) = run(&["eval", "[12]_{p,q}", "--spec", "cyclotomic:12:4,3"]);
    assert_eq!(code, 0);
    assert_eq!(out, "0\n");
}

#[test]
fn eval_numeric_constant() {
    let (out, _, code) = run(&["eval", "1", "--spec", "numeric:1.3,1.7"]);
    assert_eq!(code, 0);
    assert_eq!(out, "1\n");
}

#[test]
fn eval_names_the_vanishing_denominator() {
    let (_, err, code) = run(&["eval", "1/(p - q)", "--spec", "oneparam:1,1"]);
    assert_eq!(code, 2);
    assert!(err.contains("denominator vanishes"), "stderr: {err}");
}

#[test]
fn parse_errors_exit_two() {
    let (_, err, code) = run(&["normalize", "v*x"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown symbol"), "stderr: {err}");
    let (_, err, code) = run(&["normalize", "x^-1", "--system", "hpq"]);
    assert_eq!(code, 2);
    assert!(err.contains("not invertible"), "stderr: {err}");
    let (_, err, code) = run(&["normalize", "x", "--system", "weyl"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown system"), "stderr: {err}");
    let (_, _, code) = run(&["frobnicate"]);
    assert_eq!(code, 2);
}

#[test]
fn verify_identities_passes() {
    let (out, _, code) = run(&["verify", "identities", "--range", "30"]);
    assert_eq!(code, 0, "stdout: {out}");
    assert!(out.contains("0 failed"), "stdout: {out}");
}

#[test]
fn verify_diamond_wrong_twist_fails_with_witness() {
    let (out, _, code) = run(&["verify", "diamond", "--pprime", "p"]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL"), "stdout: {out}");
    assert!(out.contains("z*y*x"), "stdout: {out}");
}

#[test]
fn verify_center_one_param_passes() {
    let (out, _, code) = run(&["verify", "center", "--mode", "oneparam:2,3"]);
    assert_eq!(code, 0, "stdout: {out}");
    assert!(out.contains("0 failed"), "stdout: {out}");
}

#[test]
fn verify_rejects_incompatible_mode_and_bounds() {
    let (_, err, code) = run(&["verify", "identities", "--mode", "numeric:1.3,1.7"]);
    assert_eq!(code, 2);
    assert!(err.contains("does not support"), "stderr: {err}");
    let (_, _, code) = run(&["verify", "identities", "--range", "0"]);
    assert_eq!(code, 2);
    let (_, err, code) = run(&["verify", "sudoku"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown suite"), "stderr: {err}");
}

#[test]
fn verify_report_round_trips_on_success() {
    let path = temp_path("diamond-report.tsv");
    let path_str = path.to_str().expect("temp path is utf-8");
    let (out, _, code) = run(&["verify", "diamond", "--report", path_str]);
    assert_eq!(code, 0, "stdout: {out}");
    let text = std::fs::read_to_string(&path).expect("report written");
    let report = VerificationReport::parse(&text).expect("report parses");
    assert!(report.all_pass());
    assert_eq!(report.len(), 2);
    assert!(out.contains(&report.summary()), "stdout: {out}");
    std::fs::remove_file(&path).ok();
}

#[test]
fn verify_report_keeps_failures_and_jobs_cap_works() {
    let path = temp_path("gwa-report.tsv");
    let path_str = path.to_str().expect("temp path is utf-8");
    let (out, _, code) = run(&["verify", "gwa", "--jobs", "2", "--report", path_str]);
    assert_eq!(code, 1, "stdout: {out}");
    let text = std::fs::read_to_string(&path).expect("report written");
    let report = VerificationReport::parse(&text).expect("report parses");
    assert!(report.failed() > 0);
    for entry in report.failures() {
        assert!(entry.witness.is_some(), "failures carry witnesses");
        assert_eq!(out.matches(&entry.check).count(), 1, "one FAIL line each");
    }
    assert!(out.contains(&report.summary()), "stdout: {out}");
    std::fs::remove_file(&path).ok();
}
