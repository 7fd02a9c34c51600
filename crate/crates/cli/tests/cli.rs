use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hbdisks::InterlacingPair;
use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_hbdisks"));
    c.env_remove("HBDISKS_TOL");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn write_pair(dir: &Path, name: &str, p: &[f64], q: &[f64]) -> PathBuf {
    let path = dir.join(name);
    let pair = InterlacingPair::from_roots(p, q).unwrap();
    fs::write(&path, serde_json::to_string(&pair).unwrap()).unwrap();
    path
}

fn quartic(dir: &Path) -> PathBuf {
    write_pair(dir, "quartic.json", &[-4.0, -3.0, 0.0, 2.0], &[-3.5, -1.0, 1.0])
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON output")
}

#[test]
fn gen_is_deterministic_and_valid() {
    let a = run(&["gen", "--seed", "17", "--degree", "6"]);
    let b = run(&["gen", "--seed", "17", "--degree", "6"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["seed"], 17);
    let pair: InterlacingPair = serde_json::from_value(v).unwrap();
    assert_eq!(pair.k(), 6);
    assert_ne!(a.stdout, run(&["gen", "--seed", "18", "--degree", "6"]).stdout);
}

#[test]
fn gen_rejects_degree_out_of_range() {
    assert_eq!(code(&run(&["gen", "--degree", "1"])), 2);
    assert_eq!(code(&run(&["gen", "--degree", "33"])), 2);
    assert_eq!(code(&run(&["gen", "--degree", "32"])), 0);
}

#[test]
fn gen_csv_lists_roots() {
    let out = run(&["gen", "--seed", "3", "--degree", "3", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "polynomial,index,root");
    assert_eq!(lines.len(), 1 + 3 + 2);
}

#[test]
fn verify_wronskian_suite_on_quartic() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["verify", "--pair", quartic(dir.path()).to_str().unwrap(), "--suite", "wronskian"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["checks"][0]["details"]["roots"].as_array().unwrap().len(), 6);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["claim"].is_string()));
}

#[test]
fn verify_hb_suite_with_alpha() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["verify", "--pair", quartic(dir.path()).to_str().unwrap(), "--suite", "hb", "--alpha", "-4"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let roots = v["checks"][0]["details"]["roots"].as_array().unwrap();
    assert_eq!(roots.len(), 4);
    assert!(roots.iter().all(|z| z[1].as_f64().unwrap() > 0.0));
    let counts = &v["checks"][1]["details"]["census"]["counts"];
    assert_eq!(counts["outer"], 0);
    assert_eq!(counts["omega"], 1);
}

#[test]
fn verify_levelcurves_on_unit_disk_example() {
    let dir = tempfile::tempdir().unwrap();
    let pair = write_pair(dir.path(), "r.json", &[-3.0, -1.0, 1.0, 3.0], &[-2.0, 0.5, 2.0]);
    let out = run(&["verify", "--pair", pair.to_str().unwrap(), "--suite", "levelcurves", "--disk", "2"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let m = v["checks"][0]["details"]["m"].as_f64().unwrap();
    assert!(m > 0.0 && m < 1.0, "{m}");
}

#[test]
fn failed_check_exits_one() {
    // |R|² is not convex on the upper half of C_2 for this pair
    let dir = tempfile::tempdir().unwrap();
    let pair = write_pair(
        dir.path(),
        "c.json",
        &[-3.956977062732358, -2.1599474981617526, 2.183051903725192, 2.798119796088036],
        &[-3.0063204821895444, -1.7488892688410327, 2.4756020026926344],
    );
    let out = run(&["verify", "--pair", pair.to_str().unwrap(), "--suite", "convexity"]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_eq!(v["passed"], false);
    assert_eq!(v["checks"][2]["name"], "convexity_D2");
    assert_eq!(v["checks"][2]["passed"], false);
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{ not json").unwrap();
    assert_eq!(code(&run(&["verify", "--pair", bad.to_str().unwrap()])), 2);

    fs::write(&bad, r#"{"p":{"coeffs":[-1,0,1]},"q":{"coeffs":[-2,1]}}"#).unwrap();
    let out = run(&["verify", "--pair", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("interlacing"));

    let missing = dir.path().join("missing.json");
    assert_eq!(code(&run(&["analyze", "--pair", missing.to_str().unwrap()])), 2);
    assert_eq!(code(&run(&["verify", "--pair", quartic(dir.path()).to_str().unwrap(), "--suite", "nope"])), 2);
}

#[test]
fn tolerance_from_flag_and_environment() {
    let dir = tempfile::tempdir().unwrap();
    let pair = quartic(dir.path());
    let pair = pair.to_str().unwrap();
    let tolerance = |out: &Output| json(out)["tolerance"].as_f64().unwrap();

    let default = run(&["verify", "--pair", pair, "--suite", "strip"]);
    assert!((tolerance(&default) - 4e-9).abs() < 1e-20);
    let flag = run(&["verify", "--pair", pair, "--suite", "strip", "--tol", "1e-6"]);
    assert!((tolerance(&flag) - 4e-6).abs() < 1e-17);
    let env = bin().args(["verify", "--pair", pair, "--suite", "strip"]).env("HBDISKS_TOL", "1e-7").output().unwrap();
    assert!((tolerance(&env) - 4e-7).abs() < 1e-18);
    assert_eq!(code(&run(&["verify", "--pair", pair, "--tol", "0"])), 2);
}

#[test]
fn invert_recovers_degree_two_pair() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("u.json");
    fs::write(&input, r#"{"u":{"coeffs":[1,0,1]},"k":2}"#).unwrap();
    let out = run(&["invert", "--input", input.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert!((v["a"][0].as_f64().unwrap() + 1.0).abs() < 1e-8);
    assert!(v["b"][0].as_f64().unwrap().abs() < 1e-8);

    fs::write(&input, r#"{"u":{"coeffs":[1,0,1]},"k":3}"#).unwrap();
    assert_eq!(code(&run(&["invert", "--input", input.to_str().unwrap()])), 2);
    fs::write(&input, r#"{"u":{"coeffs":[-1,0,1]},"k":2}"#).unwrap();
    assert_eq!(code(&run(&["invert", "--input", input.to_str().unwrap()])), 2);
}

#[test]
fn analyze_and_levelcurves_report() {
    let dir = tempfile::tempdir().unwrap();
    let pair = quartic(dir.path());
    let v = json(&run(&["analyze", "--pair", pair.to_str().unwrap()]));
    assert_eq!(v["critical_points"].as_array().unwrap().len(), 6);
    assert_eq!(v["halfcircle_minima"].as_array().unwrap().len(), 3);

    let out = run(&["levelcurves", "--pair", pair.to_str().unwrap(), "--disk", "2", "--grid", "128"]);
    assert_eq!(code(&out), 0);
    let classes: Vec<String> = json(&out)["levels"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| l["classification"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(classes, ["single_oval", "tangent", "two_arcs"]);
}

#[test]
fn omega_plot_is_deterministic_and_complete() {
    let dir = tempfile::tempdir().unwrap();
    let pair = quartic(dir.path());
    let out = dir.path().join("omega.svg");
    let args = ["plot", "--pair", pair.to_str().unwrap(), "--out", out.to_str().unwrap()];
    assert_eq!(code(&run(&args)), 0);
    let first = fs::read(&out).unwrap();
    assert_eq!(code(&run(&args)), 0);
    assert_eq!(first, fs::read(&out).unwrap());

    let svg = String::from_utf8(first).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    // outer circle plus three inner ones
    assert_eq!(svg.matches(r##"fill="none" stroke="#1f4e79""##).count(), 4);
    // six critical points drawn as crosses
    assert_eq!(svg.matches(r##"stroke="#c0392b" stroke-width="1.6""##).count(), 6);
    // only the output file remains: no temporary left behind
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 2);
}

#[test]
fn level_plot_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let pair = write_pair(dir.path(), "r.json", &[-3.0, -1.0, 1.0, 3.0], &[-2.0, 0.5, 2.0]);
    let args = ["plot", "--pair", pair.to_str().unwrap(), "--what", "levels", "--disk", "2", "--grid", "96"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let svg = String::from_utf8(a.stdout).unwrap();
    // contours below m, at m and above m
    for color in ["#1565c0", "black", "#c0392b"] {
        assert!(svg.contains(&format!(r##"fill="none" stroke="{color}" stroke-width="1""##)), "{color}");
    }
    assert_eq!(code(&run(&["plot", "--pair", pair.to_str().unwrap(), "--format", "csv"])), 2);
}

#[test]
fn verify_json_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let gen = run(&["gen", "--seed", "5", "--degree", "4"]);
    let pair = dir.path().join("g.json");
    fs::write(&pair, &gen.stdout).unwrap();
    let args = ["verify", "--pair", pair.to_str().unwrap(), "--suite", "all", "--grid", "96", "--probes", "24"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}
