//! End-to-end checks of the command-line interface.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pseudowalk"))
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
fn ruin_json_example() {
    let out = run(&["ruin", "--N", "1", "--a", "-2", "--b", "3", "--format", "json"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "{\"p_down\":\"3/5\",\"p_up\":\"2/5\"}\n");
}

#[test]
fn pmf_zero_steps_single_row() {
    let out = run(&["pmf", "--N", "2", "--c", "1/8", "--n", "0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "k,numerator,denominator\n0,1,1\n");
}

#[test]
fn pmf_rows_are_exact_rationals() {
    let out = run(&["pmf", "--N", "2", "--c", "1/8", "--n", "1"]);
    assert!(out.status.success());
    let body = stdout(&out);
    assert!(body.starts_with("k,numerator,denominator\n"));
    assert!(body.contains("-2,-1,8"));
    assert!(body.contains("0,1,4"));
    // LF endings only.
    assert!(!body.contains('\r'));
}

#[test]
fn cdf_rows_are_partial_sums() {
    let out = run(&["cdf", "--N", "1", "--c", "1/4", "--n", "1"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "k,numerator,denominator\n-1,1,4\n0,3,4\n1,1,1\n"
    );
    let out = run(&["cdf", "--N", "2", "--c", "1/8", "--n", "0"]);
    assert_eq!(stdout(&out), "k,numerator,denominator\n0,1,1\n");
}

#[test]
fn decimal_c_is_rejected() {
    let out = run(&["pmf", "--N", "2", "--c", "0.125"]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("decimal"));
}

#[test]
fn domain_error_exits_one() {
    let out = run(&["overshoot", "--N", "2", "--b", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("b >= 1"));
}

#[test]
fn precision_is_validated() {
    let out = run(&["roots", "--N", "1", "--c", "1/4", "--z", "0.5", "--precision", "40"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("precision"));
}

#[test]
fn overshoot_law_and_h_values() {
    let out = run(&["overshoot", "--N", "2", "--b", "3", "--format", "json"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "[{\"ell\":3,\"num\":\"4\",\"den\":\"1\"},{\"ell\":4,\"num\":\"-3\",\"den\":\"1\"}]\n"
    );
    let out = run(&[
        "overshoot", "--N", "2", "--b", "1", "--z", "0.05", "--c", "1/8",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("ell,re,im\n"));
}

#[test]
fn exit_law_matches_known_values() {
    let out = run(&["exit", "--N", "2", "--a", "-1", "--b", "1", "--format", "json"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "[{\"ell\":-2,\"num\":\"-1\",\"den\":\"6\"},{\"ell\":-1,\"num\":\"2\",\"den\":\"3\"},{\"ell\":1,\"num\":\"2\",\"den\":\"3\"},{\"ell\":2,\"num\":\"-1\",\"den\":\"6\"}]\n"
    );
}

#[test]
fn verify_appendix_passes_and_is_deterministic() {
    let first = run(&["verify", "--suite", "appendix", "--format", "json"]);
    assert!(first.status.success());
    let second = run(&["verify", "--suite", "appendix", "--format", "json"]);
    assert_eq!(stdout(&first), stdout(&second));
    assert!(stdout(&first).contains("\"status\":\"pass\""));
    assert!(!stdout(&first).contains("\"status\":\"fail\""));
}

#[test]
fn verify_unknown_suite_is_domain_error() {
    let out = run(&["verify", "--suite", "bogus"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("unknown suite"));
}

#[test]
fn moments_match_worked_example() {
    let out = run(&["moments", "--N", "2", "--b", "2", "--n", "2", "--format", "json"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "{\"moment\":\"-6\"}\n");
    let out = run(&[
        "moments", "--N", "1", "--b", "3", "--a", "-2", "--n", "2", "--format", "json",
    ]);
    assert_eq!(stdout(&out), "{\"moment\":\"6\"}\n");
}

#[test]
fn lauricella_identity_boundary_data() {
    // phi(i) = i is reproduced by the discrete-harmonic interpolation.
    let out = run(&["lauricella", "--N", "1", "--a", "-2", "--b", "3"]);
    assert!(out.status.success());
    let body = stdout(&out);
    for x in -2..=3 {
        assert!(body.contains(&format!("{x},{x},1\n")), "row for {x}");
    }
}

#[test]
fn genfun_accepts_complex_zeta() {
    // At zeta = 1 the double generating function collapses to 1/(1-z).
    let out = run(&[
        "genfun", "--N", "1", "--c", "1/4", "--z", "0.5", "--zeta", "1,0", "--format", "json",
        "--precision", "6",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("2.000000e0"));
}

#[test]
fn continuum_values_have_explicit_precision() {
    let out = run(&[
        "continuum", "taub", "--N", "1", "--c", "1/4", "--b", "2", "--lambda", "1",
        "--format", "json", "--precision", "4",
    ]);
    assert!(out.status.success());
    // e^{-sqrt(4)*2} = e^{-4}.
    assert!(stdout(&out).contains("1.8316e-2"));
}
