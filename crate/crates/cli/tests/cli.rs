//! End-to-end tests against the built binary: exact output bytes for the
//! documented invocations, error-line format, exit codes and determinism.

use std::process::{Command, Output};

fn coxchar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coxchar"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn alt_json_matches_wire_example() {
    let out = coxchar(&["alt", "-n", "4", "--format", "json"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "{\"variable\":\"q\",\"terms\":[[3,\"1\"],[2,\"-2\"],[1,\"1\"]]}\n"
    );
}

#[test]
fn charpoly_a1_text() {
    let out = coxchar(&["charpoly", "-f", "A", "-n", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "q - 1\n");
    assert!(stderr(&out).contains("routes:"));
}

#[test]
fn output_is_deterministic() {
    let first = coxchar(&["charpoly", "-f", "D", "-n", "4", "--format", "json"]);
    let second = coxchar(&["charpoly", "-f", "D", "-n", "4", "--format", "json"]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.stderr, second.stderr);
}

#[test]
fn affine_both_prints_comparison() {
    let out = coxchar(&["affine", "-f", "AffC", "-n", "2", "--method", "both"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "direct:     2q^4 + q^2 - 3q + 1\nrecurrence: 2q^4 + q^2 - 3q + 1\nagree:      yes\n"
    );
}

#[test]
fn affine_rank_error_line_and_exit() {
    let out = coxchar(&["affine", "-f", "AffB", "-n", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(
        stderr(&out),
        "error: rank-out-of-range: rank 2 is out of range for AffB: minimum is 3\n"
    );
}

#[test]
fn affine_of_finite_family_is_a_usage_error() {
    let out = coxchar(&["charpoly", "-f", "AffA", "-n", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error: usage:"));
    let out = coxchar(&["affine", "-f", "B", "-n", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn descent_class_routes() {
    let out = coxchar(&["descent-class", "-n", "3", "-I", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "q^2 - q\n");
    // auto leaves the product formula out when the interior condition fails
    assert_eq!(stderr(&out), "routes: decompose, poset (agree)\n");

    let out = coxchar(&["descent-class", "-n", "3", "-I", "3", "--method", "formula"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).starts_with("error: interior-condition-violated:"));

    let out = coxchar(&["descent-class", "-n", "5", "-I", "2,4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "q^10 - 3q^9 + 3q^8 - q^7\n");
    assert_eq!(stderr(&out), "routes: decompose, formula, poset (agree)\n");

    let out = coxchar(&["descent-class", "-n", "4", "-I", "2", "-J", "1,2"]);
    assert!(out.status.success());
}

#[test]
fn alt_agrees_with_descent_class() {
    let alt = coxchar(&["alt", "-n", "6"]);
    let class = coxchar(&["descent-class", "-n", "5", "-I", "2,4"]);
    assert_eq!(stdout(&alt), stdout(&class));
}

#[test]
fn csv_batch_table() {
    let out = coxchar(&["charpoly", "-f", "A", "-n", "1:3", "--format", "csv"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "family,rank,polynomial,degree\n\
         A,1,q - 1,1\n\
         A,2,q^3 - 2q^2 + 1,3\n\
         A,3,q^6 - 3q^5 + q^4 + 2q^3 - 1,6\n"
    );
    let out = coxchar(&["charpoly", "-f", "A", "-n", "1:3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn series_text_and_json() {
    let out = coxchar(&["series", "-f", "A", "-N", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "x^0: 1\nx^1: -q + 1\nx^2: q^3 - 2q + 1\n");

    let out = coxchar(&["series", "-f", "A", "-N", "3", "--format", "json"]);
    assert_eq!(
        stdout(&out),
        "[[[0,0,\"1\"]],[[0,0,\"1\"],[1,1,\"1\"]],[[0,0,\"1\"],[1,1,\"2\"],[2,3,\"1\"]]]\n"
    );

    // the D series starts at x^2
    let out = coxchar(&["series", "-f", "D", "-N", "4"]);
    assert!(stdout(&out).starts_with("x^2:"));
}

#[test]
fn verify_product_suite_passes() {
    let out = coxchar(&["verify", "--suite", "product"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("PASS"));
    assert!(text.contains("all requested suites passed"));
}

#[test]
fn verify_unknown_suite_fails() {
    let out = coxchar(&["verify", "--suite", "nope"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).starts_with("error: unknown-suite:"));
}

#[test]
fn enumeration_cap_env_var() {
    let out = Command::new(env!("CARGO_BIN_EXE_coxchar"))
        .args(["charpoly", "-f", "A", "-n", "5", "--method", "poset"])
        .env("COXCHAR_MAX_ELEMENTS", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).starts_with("error: budget-exceeded:"));
}
