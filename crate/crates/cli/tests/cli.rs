use std::path::PathBuf;
use std::process::{Command, Output};

use primecube::commands::{self, WitnessLine};
use primecube::config::Config;
use primecube::report::{Outcome, VerificationReport};
use primecube::verify;
use primecube_core::represent;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_primecube"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn primecube")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("primecube-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn without_timestamp(mut r: VerificationReport) -> VerificationReport {
    r.metadata.timestamp = 0;
    r
}

#[test]
fn verify_all_defaults_pass_and_round_trip() {
    let path = tmp("report.json");
    let out = run(&["verify-all", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    let report: VerificationReport = serde_json::from_str(&text).unwrap();
    assert_eq!(report.min_k, Some(48));
    assert!(report.checks.iter().all(|c| c.verdict == Outcome::Pass));
    assert_eq!(report.verification_boundary.len(), 4);
    // parse then serialize gives the same bytes
    assert_eq!(report.to_json().unwrap(), text);
}

#[test]
fn low_precision_never_passes_falsely() {
    let out = run(&["verify-all", "--precision-bits", "64"]);
    let code = out.status.code().unwrap();
    assert!(code == 0 || code == 2, "exit {code}");
    let report: VerificationReport = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report.checks.iter().all(|c| c.verdict != Outcome::Fail));
}

#[test]
fn threshold_above_check_fails_run() {
    let out = run(&["verify-all", "--lambda", "0.95"]);
    assert_eq!(out.status.code(), Some(1));
    let report: VerificationReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.min_k, Some(126));
    let failed: Vec<_> = report
        .checks
        .iter()
        .filter(|c| c.verdict == Outcome::Fail)
        .map(|c| c.check_id.as_str())
        .collect();
    assert_eq!(failed, ["threshold.min_k"]);

    let out = run(&["verify-all", "--lambda", "0.95", "--k-min-check", "126"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn report_is_deterministic_apart_from_timestamp() {
    let cfg = Config::default();
    let a = without_timestamp(verify::run_verify_all(&cfg).unwrap());
    let b = without_timestamp(verify::run_verify_all(&cfg).unwrap());
    assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
}

#[test]
fn subcommands_match_verify_all_records() {
    let cfg = Config::default();
    let report = verify::run_verify_all(&cfg).unwrap();
    let find = |id: &str| report.checks.iter().find(|c| c.check_id == id).unwrap().clone();

    let products = commands::products(cfg.precision_bits).unwrap();
    for rec in &products {
        assert_eq!(rec, &find(&rec.check_id), "{}", rec.check_id);
    }

    let rows = commands::euler_factors(199, cfg.precision_bits).unwrap();
    for row in rows.iter().filter_map(|r| r.check.as_ref()) {
        assert_eq!(row, &find(&row.check_id));
    }

    let (theta, _) = commands::theta(5187, cfg.precision_bits).unwrap();
    for rec in &theta.checks {
        assert_eq!(rec, &find(&rec.check_id));
    }

    let s = commands::s_constant(5187, 45, cfg.precision_bits).unwrap();
    assert_eq!(s.check.unwrap(), find("s_constant.k45"));

    let solve = commands::solve_k(&cfg, None).unwrap();
    assert_eq!(solve.min_k, 48);
    for rec in &solve.checks {
        assert_eq!(rec, &find(&rec.check_id), "{}", rec.check_id);
    }
}

#[test]
fn config_file_overrides_defaults() {
    let path = tmp("run.cfg");
    std::fs::write(&path, "# looser measure bound\nlambda = 0.80\n").unwrap();
    let out = run(&["--config", path.to_str().unwrap(), "solve-k"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["min_k"], 31);

    // command-line flag wins over the file
    let out = run(&["--config", path.to_str().unwrap(), "solve-k", "--lambda", "0.95"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["min_k"], 126);

    std::fs::write(&path, "lambda = -1\n").unwrap();
    assert_eq!(run(&["--config", path.to_str().unwrap(), "solve-k"]).status.code(), Some(1));
    std::fs::write(&path, "nonsense\n").unwrap();
    assert_eq!(run(&["--config", path.to_str().unwrap(), "solve-k"]).status.code(), Some(1));
}

#[test]
fn represent_pair_lines_verify() {
    let out = run(&["represent", "--n", "51", "--k", "1", "--pair", "53"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<WitnessLine> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 2);
    let w1 = lines[0].to_witness().unwrap();
    let w2 = lines[1].to_witness().unwrap();
    assert_eq!(w1.powers, w2.powers);
    assert!(represent::verify_witness(&w1) && represent::verify_witness(&w2));
}

#[test]
fn scan_emits_one_line_per_odd_target() {
    let out = run(&["scan", "--from", "51", "--to", "101", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 26);
    let summary: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(summary["verify_failures"], 0);
}

#[test]
fn csv_outputs() {
    let out = run(&["theta", "--q", "7", "--emit", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("t,abs_lo,abs_hi"));
    assert_eq!(text.lines().count(), 7);

    let out = run(&["euler-factors", "--max-p", "11", "--emit", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 5);
    assert!(text.contains(",P3"));
}

#[test]
fn bad_arguments_are_rejected() {
    assert_eq!(run(&["verify-all", "--precision-bits", "32"]).status.code(), Some(1));
    assert_ne!(run(&["represent", "--n", "51", "--k", "1", "--constrained"]).status.code(), Some(0));
}
