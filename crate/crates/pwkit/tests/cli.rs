use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use pwkit::report::Report;

fn pwkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pwkit")).args(args).output().expect("pwkit runs")
}

fn write_bump(path: &Path, m: usize) {
    let grid = pwkit_core::grid::GridSpec::new(2, m, 1.0).unwrap();
    let f = pwkit::suite::BumpSpec::new(&[0.1, -0.05], 0.6).sample(grid).unwrap();
    pwkit::io::write_function(&f, path).unwrap();
}

#[test]
fn empty_config_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("empty.toml");
    fs::write(&cfg, "# nothing here\n").unwrap();
    let out = pwkit(&["weyl", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ConfigError"));
}

#[test]
fn type_d_certification_reports_the_obstruction() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let out = pwkit(&["weyl", "certify", "--family", "D", "--k", "5", "--n", "4", "--d", "4", "--report", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = Report::read(&report).unwrap();
    let rec = r.find("weyl.obstruction").expect("obstruction record");
    assert!(rec.pass);
    assert_eq!(rec.mesh["obstruction"], serde_json::Value::Bool(true));
    assert!(rec.mesh["obstruction_dim"].as_u64().unwrap() >= 1);
}

#[test]
fn surjective_pair_certifies() {
    let out = pwkit(&["weyl", "certify", "--family", "B", "--k", "3", "--n", "2", "--d", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS  weyl.surjectivity"));
}

#[test]
fn radon_writes_sinogram_and_directions() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("f.csv");
    let out_path = dir.path().join("s.csv");
    write_bump(&input, 65);
    let out = pwkit(&["radon", "--in", input.to_str().unwrap(), "--out", out_path.to_str().unwrap(), "--directions", "16"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&out_path).unwrap();
    let header: Vec<usize> = text.lines().next().unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(header[1..], [16, 2]);
    assert_eq!(text.lines().count(), 1 + header[0] * 16);
    let dirs = fs::read_to_string(dir.path().join("s.directions.csv")).unwrap();
    assert_eq!(dirs.lines().count(), 16);
}

#[test]
fn sphere_profile_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("profile.csv");
    let report = dir.path().join("report.json");
    let p = pwkit_core::sphere::ZonalProfile::cap_bump(3, 0.7, 2049, 0.1).unwrap();
    pwkit::io::write_profile(&p, &input).unwrap();
    let out = pwkit(&["sphere", "--n", "3", "--in", input.to_str().unwrap(), "--report", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let r = Report::read(&report).unwrap();
    assert_eq!(r.command, "sphere");
    assert!(r.find("sphere.slice_s3").is_some() && r.find("sphere.support").is_some());
}

#[test]
fn lift_writes_the_extension() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("target.txt");
    let lifted = dir.path().join("lifted.txt");
    fs::write(&target, "1 * x1^2\n1 * x2^2\n3 * x1^2 x2^2\n").unwrap();
    let out = pwkit(&["weyl", "lift", "--target", target.to_str().unwrap(), "--out", lifted.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let h = pwkit::io::read_polynomial(&lifted, 4).unwrap();
    let t = pwkit::io::read_polynomial(&target, 2).unwrap();
    assert_eq!(h.restrict(2), t);
}

#[test]
fn bad_grid_flag_is_rejected() {
    let out = pwkit(&["radon", "--grid", "64,1.0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ConfigError"));
}
