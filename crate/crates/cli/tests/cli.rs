//! End-to-end tests of the binary: JSON schemas, exit codes, determinism,
//! and file emission.

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_burau"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn classify_golden_point() {
    let v = run_json(&["classify", "--t", "q(3/2,1/2,5)"]);
    assert_eq!(v["discrete"], "yes");
    assert_eq!(v["faithful"], "yes");
    assert_eq!(v["exactness"], "certified");
    assert_eq!(v["regime"], "parabolic_boundary");
}

#[test]
fn classify_triangle_point() {
    let v = run_json(&["classify", "--t", "1"]);
    assert_eq!(v["discrete"]["triangle_group"], 6);
    assert_eq!(v["faithful"], "no");
}

#[test]
fn classify_float_is_numerical() {
    let v = run_json(&["classify", "--t", "0.5"]);
    assert_eq!(v["discrete"], "numerical_no");
    assert_eq!(v["exactness"], "numerical");
}

#[test]
fn roots_of_example_word() {
    let v = run_json(&["roots", "--word", "s2^-2 s1 s2^-1"]);
    assert_eq!(v["real_root_count"], 1);
    let root = &v["roots"][0];
    let approx = root["approx"].as_f64().unwrap();
    assert!((approx - 1.75488).abs() < 1e-3);
    // inside the window (0.382.., 2.618..)
    assert!(approx > 0.382 && approx < 2.619);
}

#[test]
fn hunt_reports_certificates() {
    let v = run_json(&["hunt", "--word", "s2^5 s1^2 s2^-4 s1 s2^3"]);
    let certs = v["certificates"].as_array().unwrap();
    assert_eq!(certs.len(), 2);
    for c in certs {
        assert_eq!(c["inside_window"], true);
        assert_eq!(c["upper_triangular_pair"], true);
    }
}

#[test]
fn verify_b4_pair() {
    let v = run_json(&["verify", "b4-pair"]);
    assert_eq!(v["symbolic_unequal"], true);
    assert_eq!(v["equal_at_t0"], true);
    assert_eq!(v["quotient_is_identity_at_t0"], true);
}

#[test]
fn verify_squier_and_duality() {
    for n in ["3", "4"] {
        let v = run_json(&["verify", "squier", "--n", n]);
        assert_eq!(v["relation_on_generators"], true);
        let v = run_json(&["verify", "duality", "--n", n]);
        assert_eq!(v["all_hold"], true);
    }
}

#[test]
fn verify_galois() {
    let v = run_json(&["verify", "galois", "--alpha", "q(3/2,1/2,5)", "--n", "3"]);
    assert_eq!(v["relation_verified"], true);
    // norm -1 input rejected with exit code 2
    let out = run(&["verify", "galois", "--alpha", "q(1/2,1/2,5)", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("norm -1"));
}

#[test]
fn verify_pingpong() {
    let v = run_json(&["verify", "pingpong", "--t", "-2", "--case", "1"]);
    assert_eq!(v["ok"], true);
    assert_eq!(v["certified"], true);
    let v = run_json(&["verify", "pingpong", "--t", "q(3/2,1/2,5)", "--case", "2"]);
    assert_eq!(v["ok"], true);
    let v = run_json(&["verify", "pingpong", "--t", "3", "--case", "3"]);
    assert_eq!(v["six_fixed_points_distinct"], true);
}

#[test]
fn verify_classify_duality() {
    let v = run_json(&["verify", "classify-duality", "--t", "1/2"]);
    assert_eq!(v["verdicts_agree_with_reciprocal"], true);
}

#[test]
fn burau_and_specialize() {
    let v = run_json(&["burau", "--n", "3", "--word", "s1"]);
    assert_eq!(v["matrix"][0][0], "-1*t^1");
    assert_eq!(v["matrix"][1][1], "1");
    assert_eq!(v["det"], "-1*t^1");
    let v = run_json(&["specialize", "--n", "3", "--word", "s1", "--t", "-1"]);
    assert_eq!(v["matrix"][0][0], "1");
    assert_eq!(v["exact"], true);
}

#[test]
fn isometry_subcommand() {
    let v = run_json(&["isometry", "--t", "1", "--gen", "x"]);
    assert_eq!(v["class"], "elliptic");
    assert_eq!(v["rotation"]["rotation_number"], "1/6");
    let v = run_json(&["isometry", "--t", "-2", "--gen", "yx-inv"]);
    assert_eq!(v["class"], "hyperbolic");
}

#[test]
fn orbit_subcommand() {
    let v = run_json(&["orbit", "--t", "0.5", "--iters", "200", "--threshold", "0.08"]);
    let d = v["min_pairwise_hyperbolic_distance"].as_f64().unwrap();
    assert!((d - 0.0703492).abs() < 1e-4);
    assert_eq!(v["accumulating"], true);
    assert_eq!(v["distinct_points"], 200);
}

#[test]
fn figure_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("case1.svg");
    let v = run_json(&["figure", "--t", "-2", "--case", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(v["case"], 1);
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.trim_end().ends_with("</svg>"));
    // invalid regime: error, no file
    let bad = dir.path().join("bad.svg");
    let out = run(&["figure", "--t", "5", "--case", "1", "--out", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!bad.exists());
}

#[test]
fn deterministic_output() {
    let a = run(&["classify", "--t", "q(3/2,1/2,5)"]);
    let b = run(&["classify", "--t", "q(3/2,1/2,5)"]);
    assert_eq!(a.stdout, b.stdout);
    let a = run(&["verify", "squier", "--n", "4"]);
    let b = run(&["verify", "squier", "--n", "4"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes_on_bad_input() {
    // parse error in the word grammar
    let out = run(&["roots", "--word", "s9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("out of range"));
    // zero specialization
    let out = run(&["classify", "--t", "0"]);
    assert_eq!(out.status.code(), Some(2));
    // malformed scalar
    let out = run(&["classify", "--t", "zzz"]);
    assert_eq!(out.status.code(), Some(2));
    // clap-level parse error
    let out = run(&["classify"]);
    assert_eq!(out.status.code(), Some(2));
    // sigma1 power rejected
    let out = run(&["hunt", "--word", "s1^4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("s1"));
}

#[test]
fn text_format() {
    let out = run(&["--format", "text", "classify", "--t", "-2"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("discrete Yes"));
    assert!(text.contains("faithful Yes"));
}
