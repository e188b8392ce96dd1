//! Exit codes and output contract of the `simulate` binary.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn simulate(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_simulate"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("simulate-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn sweep_writes_identical_csv_on_rerun() {
    let (a, b) = (scratch("a.csv"), scratch("b.csv"));
    for (path, workers) in [(&a, "1"), (&b, "3")] {
        let out = simulate(&[
            "sweep",
            "--preset",
            "fig2",
            "--points",
            "7",
            "--workers",
            workers,
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let (a, b) = (fs::read(a).unwrap(), fs::read(b).unwrap());
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "axis_value,Q_L,Q_M,Q_R,alpha_L,alpha_R,rho_11,rho_22,rho_33,rho_44,rho_55,rho_66,rho_77,rho_88,secular_flag,error"
    );
    assert_eq!(lines.count(), 7);
}

#[test]
fn config_file_overrides_preset() {
    let cfg = scratch("override.conf");
    fs::write(&cfg, "preset = fig2\n# narrower window\nrange = 1:2\npoints = 2\n").unwrap();
    let out = simulate(&["sweep", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let first: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(first[0].parse::<f64>().unwrap(), 1.0);
    assert_eq!(first[14], "PASS");
}

#[test]
fn invalid_configuration_exits_with_2() {
    assert_eq!(
        simulate(&["sweep", "--preset", "fig2", "--range", "3:1"]).status.code(),
        Some(2)
    );
    assert_eq!(simulate(&["sweep", "--preset", "nope"]).status.code(), Some(2));
    let cfg = scratch("bad.conf");
    fs::write(&cfg, "omega_L = 30\nlambda1 = 1.5\n").unwrap();
    assert_eq!(
        simulate(&["validate", "--config", cfg.to_str().unwrap()]).status.code(),
        Some(2)
    );
    fs::write(&cfg, "frobnicate = 1\n").unwrap();
    let out = simulate(&["validate", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
}

#[test]
fn all_points_failing_exits_with_3() {
    let out = simulate(&[
        "sweep", "--preset", "fig2", "--axis", "T_M", "--range", "-2:-1", "--points", "3",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn modulation_reports_dark_state_gain() {
    let out = simulate(&["modulate", "--preset", "fig8", "--points", "2", "--range", "1:3"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    for line in text.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let after: f64 = f[2].parse().unwrap();
        assert!((after - 0.99 * (0.7 * std::f64::consts::PI).cos().powi(2)).abs() < 1e-6);
        let scale: f64 = f[9].parse().unwrap();
        let ql = f[6].parse::<f64>().unwrap() / f[3].parse::<f64>().unwrap();
        assert!((ql / scale - 1.0).abs() < 1e-10);
    }
}

#[test]
fn channels_dump_lists_every_transition() {
    let out = simulate(&["channels-dump", "--preset", "fig2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text.lines().next().unwrap(),
        "reservoir,k,frequency,lower,upper,amplitude"
    );
    assert_eq!(text.lines().count(), 25);
}

#[test]
fn populations_and_validate_succeed() {
    let out = simulate(&["populations", "--preset", "fig6", "--points", "4"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 5);
    let out = simulate(&["validate", "--preset", "fig2"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("conservation residual"));
}
