//! End-to-end runs of the `lagfrac` binary.

use std::path::Path;
use std::process::{Command, Output};

fn lagfrac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lagfrac")).args(args).env_remove("LAGFRAC_OUT_DIR").output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

/// Data rows of a CSV, skipping metadata and the column header.
fn rows(text: &str) -> Vec<Vec<f64>> {
    text.lines().filter(|l| !l.starts_with('#')).skip(1).map(|l| l.split(',').map(|c| c.parse().unwrap()).collect()).collect()
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn apply_writes_the_monomial_image() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.csv");
    let run = lagfrac(&["apply", "--alpha", "0.75", "--func", "monomial:1", "--grid", "256", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&run), 0, "{}", stderr(&run));
    let text = read(&out);
    for line in ["# command = apply", "# alpha = 0.75", "# func = monomial:1", "# grid = 256", "# method = quadrature"] {
        assert!(text.contains(line), "missing {line}");
    }
    let data = rows(&text);
    assert_eq!(data.len(), 256);
    // (Γ(2)/Γ(2.75))² x^{1.75}
    let c = 1.0 / 1.608359421985546f64.powi(2);
    for r in &data {
        assert!((r[1] - c * r[0].powf(1.75)).abs() < 1e-7 * c * r[0].powf(1.75));
    }
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    for p in [&a, &b] {
        let run = lagfrac(&["apply", "--alpha", "1.3", "--func", "bump:0.2,0.8,2", "--grid", "64", "--out", p.to_str().unwrap()]);
        assert_eq!(code(&run), 0, "{}", stderr(&run));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn both_methods_agree() {
    let run = lagfrac(&["apply", "--alpha", "0.6", "--func", "exp:1", "--method", "both", "--grid", "128"]);
    assert_eq!(code(&run), 0, "{}", stderr(&run));
    let text = String::from_utf8(run.stdout).unwrap();
    assert!(text.contains("x,value,value_mellin,agreement"));
    for r in rows(&text) {
        assert!(r[3] < 1e-6, "{r:?}");
    }
}

#[test]
fn solve_reproduces_the_bessel_benchmark() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.csv");
    let run = lagfrac(&["solve", "--alpha", "1", "--lambda", "1", "--func", "const:1", "--length", "1", "--grid", "64", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&run), 0, "{}", stderr(&run));
    let data = rows(&read(&out));
    let last = data.last().unwrap();
    assert_eq!(last[0], 1.0);
    assert!((last[1] - 2.2795853023360672674).abs() < 1e-8);
    assert!(data.iter().all(|r| r[2].abs() < 1e-9));
}

#[test]
fn validation_failures_name_the_precondition() {
    let run = lagfrac(&["apply", "--alpha", "-1", "--func", "monomial:1"]);
    assert_eq!(code(&run), 3);
    assert!(stderr(&run).contains("alpha > 0"));

    let run = lagfrac(&["solve", "--alpha", "1", "--lambda", "5", "--func", "const:1", "--length", "1"]);
    assert_eq!(code(&run), 3);
    assert!(stderr(&run).contains("|λ| < (C₊ lᵅ)⁻¹"));

    let run = lagfrac(&["apply", "--alpha", "0.5", "--func", "sine:1"]);
    assert_eq!(code(&run), 3);
    let run = lagfrac(&["apply", "--alpha", "0.5", "--func", "monomial:-2"]);
    assert_eq!(code(&run), 3);
    let run = lagfrac(&["apply", "--alpha", "0.5", "--func", "monomial:1", "--method", "mellin"]);
    assert_eq!(code(&run), 3);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(code(&lagfrac(&["apply", "--bogus", "1"])), 2);
    assert_eq!(code(&lagfrac(&["frobnicate"])), 2);
    assert_eq!(code(&lagfrac(&["apply", "--method", "guess"])), 2);
    assert_eq!(code(&lagfrac(&["--help"])), 0);
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{"alpha": 0.75, "func": "exp:1", "grid": 32, "lambda": 0.1}"#).unwrap();
    let out = dir.path().join("o.csv");
    let run = lagfrac(&["apply", "--config", cfg.to_str().unwrap(), "--grid", "48", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&run), 0, "{}", stderr(&run));
    let text = read(&out);
    assert!(text.contains("# alpha = 0.75") && text.contains("# func = exp:1") && text.contains("# grid = 48"));
    assert_eq!(rows(&text).len(), 48);

    std::fs::write(&cfg, r#"{"alpha": 0.75, "colour": "blue"}"#).unwrap();
    assert_eq!(code(&lagfrac(&["apply", "--config", cfg.to_str().unwrap(), "--func", "exp:1"])), 3);
    std::fs::write(&cfg, r#"{"command": "solve", "alpha": 0.75}"#).unwrap();
    assert_eq!(code(&lagfrac(&["apply", "--config", cfg.to_str().unwrap(), "--func", "exp:1"])), 3);
}

#[test]
fn output_directory_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let run = Command::new(env!("CARGO_BIN_EXE_lagfrac"))
        .args(["kernel", "--alpha", "0.75", "--grid", "9"])
        .env("LAGFRAC_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&run), 0, "{}", stderr(&run));
    let text = read(&dir.path().join("kernel.csv"));
    assert!(text.contains("# c_plus = ") && text.contains("v,k_plus,k_minus"));
    let data = rows(&text);
    assert_eq!(data.len(), 9);
    // k₊ vanishes below 1 and k₋ above
    assert!(data.iter().all(|r| (r[0] <= 1.0 || r[2] == 0.0) && (r[0] >= 1.0 || r[1] == 0.0)));
}

#[test]
fn mellin_tabulates_the_multiplier() {
    let run = lagfrac(&["mellin", "--alpha", "1", "--nu", "-0.5", "--height", "10", "--grid", "11"]);
    assert_eq!(code(&run), 0, "{}", stderr(&run));
    let data = rows(&String::from_utf8(run.stdout).unwrap());
    // (Γ(−s)/Γ(1−s))² = 1/s² at s = −1/2
    assert!((data[0][1] - 4.0).abs() < 1e-12);
    for r in &data {
        let s2 = 0.25 + r[0] * r[0];
        assert!((r[3] - 1.0 / s2).abs() < 1e-12);
    }
    assert_eq!(code(&lagfrac(&["mellin", "--alpha", "1", "--nu", "0.5"])), 3);
}

#[test]
fn verify_runs_selected_suites() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("v.csv");
    let run = lagfrac(&["verify", "--suite", "1,11", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&run), 0, "{}", stderr(&run));
    let stdout = String::from_utf8(run.stdout).unwrap();
    assert!(stdout.contains("2 of 2 suites pass"));
    let data = rows(&read(&out));
    assert_eq!(data.len(), 2);
    assert!(data.iter().all(|r| r[1] == 1.0));
    assert_eq!(code(&lagfrac(&["verify", "--suite", "12"])), 3);
}
