//! End-to-end tests of the `schensted` binary: exit codes, file output,
//! determinism, and the fault-injection hooks that prove the verification
//! checks can actually fail.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_schensted");

fn run(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(BIN);
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary should spawn")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal expected")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

/// Fresh scratch directory per test, safe under parallel execution.
fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("schensted-cli-{name}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).expect("scratch dir");
    dir
}

fn read(path: &Path) -> Vec<u8> {
    fs::read(path).unwrap_or_else(|e| panic!("read {}: {e}", path.display()))
}

// ============================================================
// Exit codes
// ============================================================

#[test]
fn selftest_passes() {
    let out = run(&["selftest"], &[]);
    assert_eq!(exit_code(&out), 0, "stdout: {}", stdout(&out));
    assert!(stdout(&out).contains("selftest: 5 checks, 0 failed"));
}

#[test]
fn selftest_injected_sign_flip_fails_honestly() {
    let out = run(&["selftest", "--inject-omega-sign-flip"], &[]);
    assert_eq!(exit_code(&out), 3, "stdout: {}", stdout(&out));
    assert!(stdout(&out).contains("FAIL analytic_identities"));
}

#[test]
fn missing_required_argument_is_usage_error() {
    let out = run(&["verify", "--trials", "5", "--out", "/tmp/unused"], &[]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn alpha_out_of_range_is_usage_error() {
    let dir = scratch("alpha-range");
    let out = run(
        &["curve", "--alpha", "1.2", "--out", dir.to_str().unwrap()],
        &[],
    );
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn unknown_subcommand_is_usage_error() {
    let out = run(&["bogus"], &[]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn help_exits_zero() {
    let out = run(&["--help"], &[]);
    assert_eq!(exit_code(&out), 0);
}

#[test]
fn unwritable_output_is_io_error() {
    let out = run(
        &["curve", "--alpha", "0.5", "--out", "/proc/no-such-dir/x"],
        &[],
    );
    assert_eq!(exit_code(&out), 1);
}

// ============================================================
// Curve export
// ============================================================

#[test]
fn curve_csv_has_exact_endpoints() {
    let dir = scratch("curve-csv");
    let out = run(
        &[
            "curve",
            "--alpha",
            "0.5",
            "--grid",
            "40",
            "--out",
            dir.to_str().unwrap(),
        ],
        &[],
    );
    assert_eq!(exit_code(&out), 0);
    let text = String::from_utf8(read(&dir.join("curve_alpha0.5.csv"))).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "s,beta,kappa,endpoint_u,endpoint_v");
    assert_eq!(rows.len(), 41);
    let field = |row: &str, i: usize| -> f64 { row.split(',').nth(i).unwrap().parse().unwrap() };
    // Start of the curve: (0, 2 sqrt(alpha)); end: (kappa, beta = kappa).
    assert_eq!(field(rows[1], 0), 0.0);
    assert_eq!(field(rows[1], 1), 2.0f64.sqrt());
    let last = rows[rows.len() - 1];
    assert_eq!(field(last, 0), 2.0 / std::f64::consts::PI);
    assert_eq!(field(last, 1), 2.0 / std::f64::consts::PI);
}

#[test]
fn curve_json_carries_schema_version() {
    let dir = scratch("curve-json");
    let out = run(
        &[
            "curve",
            "--alpha",
            "0.25",
            "--grid",
            "10",
            "--format",
            "json",
            "--out",
            dir.to_str().unwrap(),
        ],
        &[],
    );
    assert_eq!(exit_code(&out), 0);
    let value: serde_json::Value =
        serde_json::from_slice(&read(&dir.join("curve_alpha0.25.json"))).unwrap();
    assert_eq!(value["schema_version"], 1);
    assert_eq!(value["alpha"], 0.25);
    assert_eq!(value["samples"].as_array().unwrap().len(), 10);
    assert_eq!(value["samples"][0]["beta"], 1.0); // 2 sqrt(1/4)
}

// ============================================================
// Simulation determinism
// ============================================================

#[test]
fn simulate_is_byte_deterministic() {
    let first = scratch("sim-a");
    let second = scratch("sim-b");
    for dir in [&first, &second] {
        let out = run(
            &[
                "simulate",
                "--n",
                "300",
                "--alpha",
                "0.3,0.7",
                "--trials",
                "2",
                "--seed",
                "11",
                "--format",
                "json",
                "--out",
                dir.to_str().unwrap(),
            ],
            &[],
        );
        assert_eq!(exit_code(&out), 0, "stdout: {}", stdout(&out));
    }
    for name in [
        "route_n300_alpha0.3_trial0.json",
        "route_n300_alpha0.3_trial1.json",
        "route_n300_alpha0.7_trial0.json",
        "route_n300_alpha0.7_trial1.json",
    ] {
        assert_eq!(
            read(&first.join(name)),
            read(&second.join(name)),
            "{name} differs"
        );
    }
}

#[test]
fn simulate_seed_changes_output() {
    let first = scratch("sim-seed-a");
    let second = scratch("sim-seed-b");
    for (dir, seed) in [(&first, "11"), (&second, "12")] {
        let out = run(
            &[
                "simulate",
                "--n",
                "300",
                "--alpha",
                "0.5",
                "--trials",
                "1",
                "--seed",
                seed,
                "--out",
                dir.to_str().unwrap(),
            ],
            &[],
        );
        assert_eq!(exit_code(&out), 0);
    }
    let name = "route_n300_alpha0.5_trial0.csv";
    assert_ne!(read(&first.join(name)), read(&second.join(name)));
}

// ============================================================
// Verification: honest pass, injected failure, reproducibility
// ============================================================

#[test]
fn verify_small_honest_run_passes() {
    let dir = scratch("verify-honest");
    let out = run(
        &[
            "verify",
            "--seed",
            "0",
            "--trials",
            "20",
            "--n",
            "1000",
            "--alpha",
            "0.5",
            "--out",
            dir.to_str().unwrap(),
        ],
        &[],
    );
    assert_eq!(exit_code(&out), 0, "stdout: {}", stdout(&out));
    assert!(stdout(&out).contains("PASS sup_median_threshold(n=1000,alpha=0.5)"));
    assert!(dir.join("report.json").exists());
}

#[test]
fn verify_injected_curve_corruption_fails() {
    let dir = scratch("verify-injected");
    let out = run(
        &[
            "verify",
            "--seed",
            "0",
            "--trials",
            "20",
            "--n",
            "1000",
            "--alpha",
            "0.5",
            "--inject-beta-scale",
            "1.5",
            "--out",
            dir.to_str().unwrap(),
        ],
        &[],
    );
    assert_eq!(exit_code(&out), 3, "stdout: {}", stdout(&out));
    assert!(stdout(&out).contains("FAIL sup_median_threshold(n=1000,alpha=0.5)"));
    // The report itself is still written so the failure can be inspected.
    assert!(dir.join("report.json").exists());
}

#[test]
fn verify_report_is_byte_identical_across_runs() {
    let first = scratch("verify-rep-a");
    let second = scratch("verify-rep-b");
    for (dir, threads) in [(&first, "1"), (&second, "4")] {
        let out = run(
            &[
                "verify",
                "--seed",
                "7",
                "--trials",
                "10",
                "--n",
                "500,1000",
                "--alpha",
                "0.3,0.5",
                "--format",
                "json",
                "--out",
                dir.to_str().unwrap(),
            ],
            &[("RAYON_NUM_THREADS", threads)],
        );
        assert_eq!(exit_code(&out), 0, "stdout: {}", stdout(&out));
    }
    assert_eq!(
        read(&first.join("report.json")),
        read(&second.join("report.json"))
    );
}

#[test]
fn verify_report_csv_parses_and_matches_grid() {
    let dir = scratch("verify-csv");
    let out = run(
        &[
            "verify",
            "--seed",
            "3",
            "--trials",
            "5",
            "--n",
            "200,400",
            "--alpha",
            "0.3,0.7",
            "--format",
            "csv",
            "--out",
            dir.to_str().unwrap(),
        ],
        &[],
    );
    assert_eq!(exit_code(&out), 0, "stdout: {}", stdout(&out));
    let text = String::from_utf8(read(&dir.join("report.csv"))).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert!(rows[0].starts_with("n,alpha,trials,"));
    assert_eq!(rows.len(), 1 + 4, "one row per (n, alpha) cell");
}
