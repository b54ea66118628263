//! End-to-end runs of the `qzeta` binary.

use std::fs;
use std::process::{Command, Output};

use qzeta::qcore::QParam;
use qzeta::zeros::{find_complex_zero, ZeroOptions};
use qzeta::Complex64;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qzeta")).args(args).output().expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

/// Data rows split into fields, keyed by the header line.
fn table(csv: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = csv.lines().filter(|l| !l.starts_with('#'));
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    (header, rows)
}

fn column(csv: &str, name: &str) -> Vec<f64> {
    let (header, rows) = table(csv);
    let k = header.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"));
    rows.iter().map(|r| r[k].parse().unwrap_or(f64::NAN)).collect()
}

#[test]
fn eval_is_real_on_the_real_axis() {
    let out = ok(&["eval", "--kind", "zeta", "--nu", "1", "--q", "0.5", "--s", "-0.5,0"]);
    assert!(column(&out, "im")[0].abs() < 1e-12);
    assert!(out.contains("# note strategy="));
}

#[test]
fn eval_at_zero_matches_closed_form() {
    let out = ok(&["eval", "--kind", "zeta", "--nu", "1", "--q", "0.5", "--s", "0,0"]);
    let closed = -1.0 / 0.5 - 1.0 / 0.5f64.ln();
    assert!((column(&out, "re")[0] - closed).abs() < 5e-7);
    // the leading digits are -0.557304...
    let v = column(&out, "re")[0];
    assert!(v < -0.557304 && v > -0.557305, "{v}");
}

#[test]
fn pole_exits_with_domain_code() {
    let out = run(&["eval", "--kind", "zeta", "--nu", "1", "--q", "0.5", "--s", "1,0"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("pole"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["eval", "--kind", "zeta", "--q", "0.5"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "--kind", "zeta", "--q", "1.5", "--s", "2"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "--kind", "zeta", "--q", "0.5", "--s", "2", "--t", "1"]).status.code(), Some(2));
    assert_eq!(run(&["scan", "--q", "0.5", "--rect", "0,0,1"]).status.code(), Some(2));
    assert_eq!(run(&["scan", "--q", "0.5", "--rect", "0,0,0,1"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "--config", "/nonexistent/run.cfg"]).status.code(), Some(2));
}

#[test]
fn em_strategy_reports_a_bound() {
    let out =
        ok(&["eval", "--kind", "zeta", "--q", "0.7", "--s", "-0.5,10", "--strategy", "em", "--em-target", "1e-9"]);
    let bound = column(&out, "bound")[0];
    assert!(bound < 1e-9);
    let reference = ok(&["eval", "--kind", "zeta", "--q", "0.7", "--s", "-0.5,10", "--strategy", "expansion"]);
    let d = (column(&out, "re")[0] - column(&reference, "re")[0])
        .hypot(column(&out, "im")[0] - column(&reference, "im")[0]);
    assert!(d < bound + 1e-10, "{d} vs {bound}");
}

#[test]
fn every_kind_evaluates() {
    let dir = tempfile::tempdir().unwrap();
    let chi = dir.path().join("chi4.txt");
    fs::write(&chi, "4\n1, 1, 0\n3, -1, 0\n").unwrap();
    let chi = chi.to_str().unwrap();
    for args in [
        vec!["--kind", "L", "--nu", "2", "--chi", chi],
        vec!["--kind", "L", "--mu", "1", "--chi", chi],
        vec!["--kind", "f", "--t", "1,0.5", "--chi", "principal:3"],
        vec!["--kind", "g", "--t", "0.5,0", "--a", "0.25"],
        vec!["--kind", "tsumura", "--mu", "2", "--a", "0.5"],
    ] {
        let mut full = vec!["eval", "--q", "0.4", "--s", "3,1"];
        full.extend(args);
        let out = ok(&full);
        assert!(column(&out, "re")[0].is_finite(), "{full:?}");
    }
    // a table that is not a character
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "4\n1, 1, 0\n3, 1, 0\n2, 1, 0\n").unwrap();
    let out = run(&["eval", "--kind", "L", "--q", "0.5", "--s", "2", "--chi", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn trajectory_on_the_default_schedule_has_102_rows() {
    let out = ok(&["trajectory", "--origin", "trivial:1", "--nu", "1", "--schedule", "standard"]);
    assert_eq!(
        ok(&["trajectory", "--origin", "trivial:1", "--nu", "1", "--schedule", "paper"]),
        out.replace("=standard", "=paper")
    );
    let (header, rows) = table(&out);
    assert_eq!(header, ["q", "re_s", "im_s", "residual", "status", "newton_iters", "slope_estimate"]);
    assert_eq!(rows.len(), 102);
    assert!(out.lines().last().unwrap().starts_with("# crystal nearest_integer=-1 "));
}

fn endpoint(out: &str) -> f64 {
    *column(out, "re_s").last().unwrap()
}

#[test]
fn first_nontrivial_trajectory_and_the_nu_shift() {
    let one = ok(&["trajectory", "--origin", "rho:1", "--nu", "1"]);
    assert!(one.lines().last().unwrap().starts_with("# crystal nearest_integer=0 "), "{}", one.lines().last().unwrap());
    let two = ok(&["trajectory", "--origin", "rho:1", "--nu", "2"]);
    let shift = endpoint(&two) - endpoint(&one);
    assert!((shift - 1.0).abs() < 0.5, "{shift}");
}

#[test]
fn trajectory_from_a_schedule_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q.txt");
    fs::write(&path, "# coarse\n0.9\n0.7\n0.5\n").unwrap();
    let out = ok(&["trajectory", "--origin", "-2,0", "--schedule", path.to_str().unwrap()]);
    assert_eq!(column(&out, "q"), [0.9, 0.7, 0.5]);
    fs::write(&path, "0.5\n0.7\n").unwrap();
    assert_eq!(run(&["trajectory", "--origin", "-2,0", "--schedule", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn field_minima_repeat_with_the_period() {
    // q = 2^-64
    let out = ok(&["scan", "--mode", "field", "--q", "5.4e-20", "--rect", "-0.05,0,0.05,1", "--grid", "3,401"]);
    let (_, rows) = table(&out);
    let centre: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r[0].parse::<f64>().unwrap().abs() < 1e-9)
        .map(|r| (r[1].parse().unwrap(), r[2].parse().unwrap()))
        .collect();
    let minima: Vec<f64> = centre.windows(3).filter(|w| w[1].1 < w[0].1 && w[1].1 < w[2].1).map(|w| w[1].0).collect();
    assert!(minima.len() >= 5, "{minima:?}");
    let period = 2.0 * std::f64::consts::PI / 5.4e-20f64.ln().abs();
    assert!((period - 0.1416).abs() < 1e-3);
    for w in minima.windows(2) {
        assert!(((w[1] - w[0]) / period - 1.0).abs() < 0.1, "{minima:?}");
    }
}

#[test]
fn candidate_scan_refines_the_first_zero() {
    let out =
        ok(&["scan", "--mode", "candidates", "--q", "0.99", "--nu", "1", "--rect", "-3,13,10,15", "--grid", "40,20"]);
    assert!(out.contains("# note warning=clipped"));
    let (header, rows) = table(&out);
    let k = header.iter().position(|h| h == "in_cell").unwrap();
    let found: Vec<&Vec<String>> = rows.iter().filter(|r| r[k] == "true").collect();
    assert_eq!(found.len(), 1, "{rows:?}");
    let z = Complex64::new(found[0][4].parse().unwrap(), found[0][5].parse().unwrap());
    let opts = ZeroOptions::default();
    let oracle = find_complex_zero(1, &QParam::new(0.99).unwrap(), Complex64::new(0.5, 14.13472), &opts).unwrap();
    assert!((z - oracle.s).norm() < 1e-6, "{z} vs {}", oracle.s);
}

#[test]
fn zero_free_rectangle_is_empty_with_a_warning() {
    let out = ok(&["scan", "--mode", "candidates", "--q", "0.5", "--nu", "1", "--rect", "2,0,4,10"]);
    assert!(out.contains("# note warning="));
    assert!(table(&out).1.is_empty());
}

#[test]
fn crystal_special_and_classical_limits() {
    let out = ok(&["crystal", "--nu", "1", "--s", "0.5,3"]);
    assert_eq!(column(&out, "re")[0], -1.0);
    let out = ok(&["special", "--m", "1", "--nu", "1", "--q", "0.999"]);
    assert!((column(&out, "re")[0] + 1.0 / 12.0).abs() < 0.01);
    let out = ok(&["compare-classical", "--kind", "zeta", "--nu", "1", "--s", "2,0", "--q-list", "0.9,0.99,0.999"]);
    let err = column(&out, "abs_err");
    assert!(err[0] > err[1] && err[1] > err[2], "{err:?}");
    assert_eq!(run(&["crystal", "--nu", "1", "--s", "-1.5,0.5", "--chi", "principal:0"]).status.code(), Some(2));
}

#[test]
fn certify_searches_and_checks() {
    let out = ok(&["certify", "--s", "-1.5,4", "--q", "0.6", "--nu", "1", "--target", "1e-8"]);
    assert!(out.contains("# note mode=search"));
    assert!(column(&out, "bound")[0] < 1e-8);
    let out =
        ok(&["certify", "--s", "-3,0", "--q", "0.9", "--head", "1", "--depth", "6", "--order", "1", "--window", "1"]);
    assert!(out.contains(",false,"), "{out}");
    assert_eq!(run(&["certify", "--s", "1,1", "--q", "0.5", "--head", "3"]).status.code(), Some(2));
}

#[test]
fn zero_by_bisection_and_newton() {
    let out = ok(&["zero", "--q", "0.5", "--bracket", "-2.5,-1.5"]);
    let re = column(&out, "re_s")[0];
    assert!(re > -2.5 && re < -1.5);
    let out = ok(&["zero", "--q", "0.5", "--guess", &format!("{re},0.01")]);
    assert!((column(&out, "re_s")[0] - re).abs() < 1e-6);
    assert_eq!(run(&["zero", "--q", "0.5", "--bracket", "3,4"]).status.code(), Some(3));
}

#[test]
fn json_mirrors_csv() {
    let args = ["eval", "--kind", "zeta", "--q", "0.3", "--s", "-2.5,1"];
    let csv = ok(&args);
    let mut j = args.to_vec();
    j.extend(["--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&ok(&j)).unwrap();
    assert_eq!(doc["command"], "eval");
    assert_eq!(doc["params"]["s"], "-2.5,1");
    assert_eq!(doc["rows"][0]["re"].as_f64().unwrap(), column(&csv, "re")[0]);
}

#[test]
fn header_replays_to_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first.csv");
    let out = ok(&["scan", "--q", "0.7", "--rect", "-1,0,1,3", "--grid", "5,7", "--output", first.to_str().unwrap()]);
    assert_eq!(fs::read_to_string(&first).unwrap(), out);
    let cfg = dir.path().join("replay.cfg");
    let header: String = out.lines().filter(|l| l.starts_with('#')).map(|l| format!("{l}\n")).collect();
    fs::write(&cfg, header).unwrap();
    assert_eq!(ok(&["scan", "--config", cfg.to_str().unwrap()]), out);
    // flags override the file
    let other = ok(&["scan", "--config", cfg.to_str().unwrap(), "--q", "0.6"]);
    assert!(other.contains("# param q=0.6") && !other.contains("# param q=0.7"));
}
