//! End-to-end tests of the `coinwalk` binary: command output, file
//! formats, and the exit-code contract (0 pass, 1 failed check or runtime
//! failure, 2 malformed input).

use std::f64::consts::{FRAC_PI_2, PI};
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const HADAMARD_ANGLE: &str = "euler:0,1.5707963267948966,0";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coinwalk"))
        .args(args)
        .output()
        .expect("binary should run")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no exit code")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout should be one JSON document")
}

fn field(v: &serde_json::Value, key: &str) -> f64 {
    v[key].as_f64().unwrap_or_else(|| panic!("missing numeric key `{key}` in {v}"))
}

/// Parses a `site,probability` CSV into (site, probability) rows.
fn read_distribution(path: &Path) -> Vec<(i64, f64)> {
    let text = fs::read_to_string(path).expect("distribution file exists");
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("site,probability"));
    lines
        .map(|line| {
            let (site, p) = line.split_once(',').expect("two columns");
            (site.parse().unwrap(), p.parse().unwrap())
        })
        .collect()
}

#[test]
fn simulate_two_step_walk_splits_half_half() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("d.csv");
    let out = run(&[
        "simulate",
        "--coin",
        HADAMARD_ANGLE,
        "--steps",
        "2",
        "--init",
        "site=0,up",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);

    let rows = read_distribution(&csv);
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0].0, 0);
    assert_eq!(rows[1].0, 2);
    assert!((rows[0].1 - 0.5).abs() <= 1e-12);
    assert!((rows[1].1 - 0.5).abs() <= 1e-12);

    let summary = stdout_json(&out);
    assert_eq!(summary["steps"], 2);
    assert!((field(&summary, "mean") - 1.0).abs() <= 1e-12);
    assert!((field(&summary, "variance") - 1.0).abs() <= 1e-12);
    assert!(field(&summary, "norm_drift") <= 1e-12);
}

#[test]
fn simulate_identity_coin_transports_in_one_direction() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("d.csv");
    let out = run(&[
        "simulate",
        "--coin",
        "euler:0,0,0",
        "--steps",
        "5",
        "--init",
        "site=0,up",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    let rows = read_distribution(&csv);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].0, 5);
    assert!((rows[0].1 - 1.0).abs() <= 1e-12);
}

#[test]
fn simulate_zero_steps_reproduces_the_initial_distribution() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("d.csv");
    let out = run(&[
        "simulate",
        "--steps",
        "0",
        "--init",
        "site=0,down",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(read_distribution(&csv), vec![(0, 1.0)]);
    assert_eq!(stdout_json(&out)["steps"], 0);
}

#[test]
fn simulate_accepts_explicit_coin_amplitudes() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("d.csv");
    let out = run(&[
        "simulate",
        "--steps",
        "0",
        "--init",
        "site=1,0,0,1,0",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(read_distribution(&csv), vec![(1, 1.0)]);
}

#[test]
fn simulate_outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("a.csv");
    let second = dir.path().join("b.csv");
    let args = |path: &Path| {
        vec![
            "simulate".to_string(),
            "--phi".to_string(),
            "0.3".to_string(),
            "--steps".to_string(),
            "40".to_string(),
            "--init".to_string(),
            "site=0,sym".to_string(),
            "--out".to_string(),
            path.to_str().unwrap().to_string(),
        ]
    };
    let out_a = run(&args(&first).iter().map(String::as_str).collect::<Vec<_>>());
    let out_b = run(&args(&second).iter().map(String::as_str).collect::<Vec<_>>());
    assert_eq!(exit_code(&out_a), 0);
    assert_eq!(exit_code(&out_b), 0);
    assert_eq!(out_a.stdout, out_b.stdout);
    assert_eq!(fs::read(&first).unwrap(), fs::read(&second).unwrap());
}

#[test]
fn simulate_walking_off_a_manual_window_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("d.csv");
    let out = run(&[
        "simulate",
        "--steps",
        "5",
        "--lattice",
        "4",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 1);
    assert!(!out.stderr.is_empty());
}

#[test]
fn malformed_inputs_exit_two() {
    for args in [
        vec!["simulate", "--coin", "euler:1,2"],
        vec!["simulate", "--init", "site=0,diag"],
        vec!["simulate", "--init", "0,up"],
        vec!["canonicalize", "--coin", "matrix:1,0,0,0,0,0,1"],
        vec!["verify", "rational", "--theta", "1.5708", "--p", "2", "--q", "4"],
        vec!["verify", "canonical", "--coin", "euler:0,nan,0"],
        vec!["spectrum", "--samples", "2"],
        vec!["simulate", "--bogus-flag"],
        vec!["frobnicate"],
    ] {
        let out = run(&args);
        assert_eq!(exit_code(&out), 2, "args {args:?} should exit 2");
    }
}

#[test]
fn canonicalize_theta_only_coin_yields_identity_transform() {
    let out = run(&["canonicalize", "--coin", "euler:0,0.7,0"]);
    assert_eq!(exit_code(&out), 0);
    let summary = stdout_json(&out);
    assert!((field(&summary, "theta") - 0.7).abs() <= 1e-12);
    assert!(field(&summary, "w_phase").abs() <= 1e-12);
    let x: Vec<f64> = summary["x_matrix"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    let identity = [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0];
    for (got, want) in x.iter().zip(identity) {
        assert!((got - want).abs() <= 1e-12);
    }
    assert!(field(&summary, "residual_check") <= 1e-12);
    assert!(summary.get("global_phase").is_none());
}

#[test]
fn canonicalize_x_axis_rotation_keeps_the_rotation_angle() {
    let out = run(&["canonicalize", "--coin", "axis:3.1415926,1,0,0"]);
    assert_eq!(exit_code(&out), 0);
    let summary = stdout_json(&out);
    assert!((field(&summary, "theta") - 3.1415926).abs() <= 1e-9);
    assert!(field(&summary, "residual_check") <= 1e-12);
}

#[test]
fn canonicalize_reports_the_global_phase_of_a_hadamard_matrix() {
    let h = "matrix:0.7071067811865476,0,0.7071067811865476,0,\
             0.7071067811865476,0,-0.7071067811865476,0";
    let out = run(&["canonicalize", "--coin", h]);
    assert_eq!(exit_code(&out), 0);
    let summary = stdout_json(&out);
    assert!((field(&summary, "theta") - FRAC_PI_2).abs() <= 1e-9);
    assert!((field(&summary, "global_phase") - FRAC_PI_2).abs() <= 1e-9);
    assert!(field(&summary, "residual_check") <= 1e-12);
}

#[test]
fn verify_canonical_passes_and_records_the_probe_seed() {
    let out = run(&[
        "verify",
        "canonical",
        "--coin",
        "euler:1.0472,1.5708,0.7854",
        "--steps",
        "10",
    ]);
    assert_eq!(exit_code(&out), 0);
    let report = stdout_json(&out);
    assert_eq!(report["check"], "canonical_reduction");
    assert_eq!(report["pass"], true);
    assert_eq!(report["n_steps"], 10);
    assert_eq!(report["parameters"]["seed"], 7);
    assert_eq!(report["parameters"]["n_probes"], 8);
    assert!(field(&report, "max_deviation") <= 1e-12);
}

#[test]
fn verify_electric_cumulative_identity_passes() {
    let out = run(&[
        "verify",
        "electric",
        "--theta",
        "1.5708",
        "--phi",
        "0.3",
        "--steps",
        "20",
    ]);
    assert_eq!(exit_code(&out), 0);
    let report = stdout_json(&out);
    assert_eq!(report["check"], "cumulative_electric_identity");
    assert_eq!(report["pass"], true);
    assert!(field(&report, "max_deviation") <= 1e-12);
}

#[test]
fn verify_rational_field_revival_passes() {
    let out = run(&[
        "verify",
        "rational",
        "--theta",
        "1.5708",
        "--p",
        "1",
        "--q",
        "3",
        "--periods",
        "4",
    ]);
    assert_eq!(exit_code(&out), 0);
    let report = stdout_json(&out);
    assert_eq!(report["pass"], true);
    assert_eq!(report["n_steps"], 12);
}

#[test]
fn verify_translation_separates_uniform_from_electric_walks() {
    let uniform = run(&["verify", "translation", "--coin", HADAMARD_ANGLE]);
    assert_eq!(exit_code(&uniform), 0);
    assert_eq!(stdout_json(&uniform)["pass"], true);

    let electric = run(&[
        "verify",
        "translation",
        "--coin",
        HADAMARD_ANGLE,
        "--phi",
        "0.3",
    ]);
    assert_eq!(exit_code(&electric), 1);
    let report = stdout_json(&electric);
    assert_eq!(report["pass"], false);
    assert!(field(&report, "max_deviation") > 0.1);
}

#[test]
fn verify_exit_code_tracks_a_failed_check() {
    let out = run(&[
        "verify",
        "canonical",
        "--coin",
        "euler:1.0,1.0,0.5",
        "--tol",
        "1e-30",
    ]);
    assert_eq!(exit_code(&out), 1);
    assert_eq!(stdout_json(&out)["pass"], false);
}

#[test]
fn spectrum_reports_the_walk_group_speed_and_writes_the_curve() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("disp.csv");
    let out = run(&[
        "spectrum",
        "--coin",
        HADAMARD_ANGLE,
        "--samples",
        "512",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    let summary = stdout_json(&out);
    assert!((field(&summary, "max_v_group") - FRAC_PI_4_SPEED).abs() <= 2e-3);
    assert!(field(&summary, "momentum_shift").abs() <= 1e-12);

    let text = fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,omega_plus,omega_minus,v_group"));
    assert_eq!(lines.count(), 512);
}

/// cos(π/4): the top group speed of the θ = π/2 walk.
const FRAC_PI_4_SPEED: f64 = std::f64::consts::FRAC_1_SQRT_2;

#[test]
fn spectrum_of_a_three_angle_coin_matches_its_reduced_band() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("disp.csv");
    let out = run(&[
        "spectrum",
        "--coin",
        "euler:1.0472,1.5708,0.7854",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    let summary = stdout_json(&out);
    let shift = (1.0472 + 0.7854) / 2.0;
    assert!((field(&summary, "momentum_shift") - shift).abs() <= 1e-12);
    assert!((field(&summary, "omega_min") - 1.5708 / 2.0).abs() <= 1e-3);
    assert!((field(&summary, "omega_max") - (PI - 1.5708 / 2.0)).abs() <= 1e-3);
}

#[test]
fn spectrum_of_the_trivial_coin_has_unit_group_speed() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("disp.csv");
    let out = run(&[
        "spectrum",
        "--coin",
        "euler:0,0,0",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    assert!((field(&stdout_json(&out), "max_v_group") - 1.0).abs() <= 1e-9);
}
