//! End-to-end binary tests: the documented invocations, validation errors
//! naming the offending field, config-file precedence, and byte-identical
//! reports for identical configuration.

use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::atomic::{AtomicU64, Ordering};

fn exe() -> &'static str {
    env!("CARGO_BIN_EXE_orbilab")
}

static COUNTER: AtomicU64 = AtomicU64::new(0);

fn temp_path(label: &str) -> PathBuf {
    let unique = COUNTER.fetch_add(1, Ordering::Relaxed);
    std::env::temp_dir().join(format!("orbilab-{label}-{}-{unique}", std::process::id()))
}

fn run(args: &[&str]) -> Output {
    Command::new(exe()).args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

/// Data rows of a CSV report: comment lines stripped, header dropped.
fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.is_empty())
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn scan_example_converges_and_is_byte_deterministic() {
    let (first, second) = (temp_path("scan-a"), temp_path("scan-b"));
    for path in [&first, &second] {
        let out = run(&[
            "gamma0-scan",
            "--primes",
            "--nmax",
            "20000",
            "--eps",
            "0.1",
            "--jobs",
            "2",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "stderr: {}", stderr(&out));
    }
    let (a, b) = (std::fs::read(&first).unwrap(), std::fs::read(&second).unwrap());
    assert_eq!(a, b, "identical config must give identical bytes");

    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("# orbilab"), "report must carry the tool header");
    assert!(text.contains("# config "), "report must embed the config");
    let mut checked = 0;
    for row in csv_rows(&text) {
        let level: u64 = row[0].parse().unwrap();
        if level >= 5000 {
            let ratio: f64 = row[3].parse().unwrap();
            assert!((ratio - 1.0).abs() <= 0.02, "ratio {ratio} at level {level}");
            checked += 1;
        }
    }
    assert!(checked > 1000, "expected many prime levels past 5000, saw {checked}");
}

#[test]
fn signature_example_prints_exact_area() {
    let out = run(&["signature", "--g", "0", "--cusps", "0", "--cones", "2,3,7"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("(1/21) pi"), "stdout: {text}");
}

#[test]
fn signature_rejects_bad_cone_orders() {
    let out = run(&["signature", "--g", "0", "--cusps", "1", "--cones", "1,3"]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("cones"), "stderr: {}", stderr(&out));
}

#[test]
fn oracle_verify_full_range_is_clean() {
    let out = run(&["oracle-verify", "--nmax", "300"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("0 mismatches"), "stdout: {}", stdout(&out));
}

#[test]
fn eps_validation_names_the_field() {
    let out = run(&["gamma0-scan", "--nmax", "100", "--eps", "0.5"]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("eps"), "stderr: {}", stderr(&out));
}

#[test]
fn empty_level_range_names_the_field() {
    let out = run(&["gamma0-scan", "--nmin", "20", "--nmax", "10"]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("nmax"), "stderr: {}", stderr(&out));
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let cfg = temp_path("cfg");
    std::fs::write(&cfg, "eps = 0.05\nnmax = 50\nformat = csv\n").unwrap();
    let report = temp_path("cfg-report");
    let out = run(&[
        "gamma0-scan",
        "--config",
        cfg.to_str().unwrap(),
        "--eps",
        "0.1",
        "--out",
        report.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = std::fs::read_to_string(&report).unwrap();
    let config_line = text.lines().find(|l| l.starts_with("# config")).unwrap();
    assert!(config_line.contains("\"eps\":0.1"), "flag must override the file: {config_line}");
    assert!(config_line.contains("\"nmax\":50"), "file default must apply: {config_line}");
}

#[test]
fn unknown_config_key_is_rejected() {
    let cfg = temp_path("cfg-bad");
    std::fs::write(&cfg, "epz = 0.05\n").unwrap();
    let out = run(&["gamma0-scan", "--config", cfg.to_str().unwrap(), "--nmax", "20"]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("epz"), "stderr: {}", stderr(&out));
}

#[test]
fn json_report_embeds_tool_and_config() {
    let out = run(&["b1-bound", "--seed", "1", "--scale", "1e4", "--t", "50", "--format", "json"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["tool"]["name"], "orbilab");
    assert!(report["tool"]["version"].as_str().is_some_and(|v| !v.is_empty()));
    assert_eq!(report["config"]["scale"], 10000.0);
    let row = &report["rows"][0];
    assert_eq!(row["is_upper_bound"], true);
    assert!(row["bound"].as_f64().unwrap() < 0.01);
}

#[test]
fn orbit_lemma_is_seed_deterministic_and_verified() {
    let args = [
        "orbit-lemma",
        "--length",
        "1.4",
        "--model",
        "h2",
        "--points",
        "40",
        "--k-max",
        "30",
        "--seed",
        "5",
        "--format",
        "json",
    ];
    let (first, second) = (run(&args), run(&args));
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout, "same seed must give identical bytes");
    let report: serde_json::Value = serde_json::from_str(&stdout(&first)).unwrap();
    assert_eq!(report["rows"][0]["verified"], true);
    assert_eq!(report["rows"][0]["violations"], 0);
}

#[test]
fn trace_reports_one_row_per_time() {
    let out = run(&["trace", "--seed", "2", "--scale", "100", "--t", "0.5,5", "--degree", "1"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("schema=trace.v1"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 2);
    for row in &rows {
        assert_eq!(row[6], "GaussianUpperBound");
        assert_eq!(row[7], "true", "degree-1 rows must be flagged as bounds");
    }
}

#[test]
fn quaternion_check_exit_codes_follow_the_pattern() {
    let good = run(&["quaternion-check", "--places", "-1:3,2:5,4:4"]);
    assert!(good.status.success());
    assert!(stdout(&good).contains("pattern holds"));

    let bad = run(&["quaternion-check", "--places", "2:3,1:1"]);
    assert!(!bad.status.success());
    assert!(stdout(&bad).contains("FAILS"));
}

#[test]
fn bs_check_passes_on_the_prime_family() {
    let out = run(&["bs-check", "--primes", "--nmax", "3000", "--threshold", "1e-3", "--jobs", "2"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("Pass"));
}

#[test]
fn plane_orbit_rejects_twist() {
    let out = run(&["orbit-lemma", "--length", "1.0", "--twist", "0.5", "--model", "h2"]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("twist"), "stderr: {}", stderr(&out));
}
