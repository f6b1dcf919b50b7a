use std::path::Path;
use std::process::{Command, Output};

use proptest::prelude::*;
use vdw_sphere_cli::config::{Mode, OscillatorSpec, RunConfig, Spacing, TransitionSpec};
use vdw_sphere_cli::sweep::CSV_HEADER;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vdw-sphere"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn example() -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("config.example")
        .display()
        .to_string()
}

#[test]
fn example_config_is_the_default() {
    let text = std::fs::read_to_string(example()).unwrap();
    assert_eq!(RunConfig::parse(&text).unwrap(), RunConfig::default());
}

#[test]
fn sweep_writes_exact_header_and_lf() {
    let out = bin(&[
        "sweep",
        "--config",
        &example(),
        "--set",
        "points=3",
        "--jobs",
        "2",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = String::from_utf8(out.stdout).unwrap();
    assert!(!csv.contains('\r'));
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], CSV_HEADER);
    assert_eq!(lines.len(), 4);
    assert!(lines[1..].iter().all(|l| l.split(',').count() == 9));
    assert!(String::from_utf8_lossy(&out.stderr).contains("slope"));
}

#[test]
fn print_config_round_trips_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin(&[
        "sweep",
        "--set",
        "oscillator=2, 0.5, 0.05",
        "--set",
        "radius=2.5",
        "--set",
        "r_min=3",
        "--set",
        "r_max=9",
        "--rel-tol",
        "1e-6",
        "--jobs",
        "3",
        "--print-config",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let cfg = RunConfig::parse(&text).unwrap();
    assert_eq!(cfg.radius, 2.5);
    assert_eq!(cfg.quad_rel_tol, 1e-6);
    assert_eq!(cfg.jobs, 3);
    // an override appends to the list from the file
    assert_eq!(cfg.oscillators.len(), 2);
    let path = dir.path().join("c.cfg");
    std::fs::write(&path, &text).unwrap();
    let again = bin(&[
        "sweep",
        "--config",
        path.to_str().unwrap(),
        "--print-config",
    ]);
    assert_eq!(String::from_utf8(again.stdout).unwrap(), text);
}

#[test]
fn config_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.cfg");
    std::fs::write(&path, "radius = 1\nr_min = oops\n").unwrap();
    let out = bin(&["sweep", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2") && err.contains("r_min"), "{err}");

    assert_eq!(bin(&["sweep", "--set", "r_min=0.5"]).status.code(), Some(1));
    assert_eq!(bin(&["sweep", "--format", "json"]).status.code(), Some(1));
    assert_eq!(bin(&["sweep", "--bogus"]).status.code(), Some(1));
    assert_eq!(
        bin(&["sweep", "--config", "/nonexistent"]).status.code(),
        Some(1)
    );
}

#[test]
fn failed_points_become_nan_rows_and_exit_2() {
    let out = bin(&[
        "sweep",
        "--set",
        "n_max=2",
        "--set",
        "points=2",
        "--set",
        "r_min=1.001",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(csv.lines().next(), Some(CSV_HEADER));
    assert!(csv
        .lines()
        .skip(1)
        .any(|l| l.ends_with("nan,nan,nan,nan,nan,nan,nan")));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not converged"));
}

#[test]
fn short_and_long_modes() {
    for mode in ["short", "long"] {
        let out = bin(&[
            "sweep",
            "--set",
            &format!("mode={mode}"),
            "--set",
            "points=3",
        ]);
        assert!(out.status.success(), "{mode}");
        assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 4);
    }
}

#[test]
fn short_mode_slope_is_minus_three() {
    let out = bin(&[
        "sweep",
        "--set",
        "mode=short",
        "--set",
        "r_min=1.001",
        "--set",
        "r_max=1.1",
    ]);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("d ln|U| / d ln delta_r = -3.0000"), "{err}");
}

#[test]
fn fig1_writes_csv_and_gnuplot() {
    let dir = tempfile::tempdir().unwrap();
    let gp = dir.path().join("fig1.gp");
    let csv = dir.path().join("fig1.csv");
    let out = bin(&[
        "fig1",
        "--points",
        "7",
        "--gnuplot",
        gp.to_str().unwrap(),
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("delta_r_over_lambda,F_gamma_0.01,F_gamma_0.1,F_gamma_1\n"));
    assert_eq!(text.lines().count(), 8);
    assert!(std::fs::read_to_string(&gp).unwrap().contains("plot $data"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("strictly ordered: true"));
}

#[test]
fn asymptotes_prints_coefficients() {
    let out = bin(&["asymptotes"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for key in [
        "retarded_coefficient",
        "short_distance_coefficient",
        "kernel_integral = 5.75",
    ] {
        assert!(text.contains(key), "{text}");
    }
}

#[test]
fn selftest_passes_and_zero_tolerance_names_checks() {
    let ok = bin(&["selftest"]);
    assert_eq!(ok.status.code(), Some(0));
    let lines: Vec<serde_json::Value> = String::from_utf8(ok.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(lines.iter().all(|v| v["passed"] == true));
    assert!(lines
        .iter()
        .all(|v| v["measured"].is_number() && v["tolerance"].is_number()));

    let bad = bin(&["selftest", "--tolerance", "0"]);
    assert_eq!(bad.status.code(), Some(3));
    let err = String::from_utf8_lossy(&bad.stderr);
    for check in ["kernel_integral", "wronskian", "thread_determinism"] {
        assert!(err.contains(check), "{err}");
    }
}

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![0.0f64..10.0, 1e-12f64..1e-3, 1e3f64..1e9]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn config_serialization_round_trips(
        osc in prop::collection::vec((finite(), finite(), finite()), 0..4),
        tr in prop::collection::vec((finite(), finite()), 0..3),
        radius in finite(),
        r_min in finite(),
        points in 2usize..500,
        log in any::<bool>(),
        mode in 0usize..4,
        jobs in 0usize..64,
        tol in 1e-14f64..1e-2,
    ) {
        let cfg = RunConfig {
            mode: [Mode::Full, Mode::Short, Mode::Long, Mode::Fig1][mode],
            oscillators: osc.iter().map(|&(plasma, resonance, damping)| OscillatorSpec { plasma, resonance, damping }).collect(),
            transitions: tr.iter().map(|&(frequency, dipole_sq)| TransitionSpec { frequency, dipole_sq }).collect(),
            radius,
            r_min,
            r_max: r_min * 3.0 + 1.0,
            points,
            spacing: if log { Spacing::Log } else { Spacing::Linear },
            quad_rel_tol: tol,
            jobs,
            ..RunConfig::default()
        };
        prop_assert_eq!(RunConfig::parse(&cfg.serialize()).unwrap(), cfg);
    }
}
