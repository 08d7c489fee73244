//! Command-line behavior: output contracts, flag diagnostics, exit codes.

use memchan::cli::run;
use memchan::sweep::format_significant;

fn run_cli(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["memchan"];
    argv.extend_from_slice(args);
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn capacity_prints_twelve_significant_digits() {
    let (code, out, err) = run_cli(&["capacity", "--nbar", "1", "--noise", "0.3333333333"]);
    assert_eq!(code, 0, "stderr: {err}");
    let expected = memchan::memoryless_capacity(1.0, 0.3333333333).unwrap();
    assert_eq!(out, format!("{}\n", format_significant(expected, 12)));
    assert!(out.starts_with("1.2171614"));
}

#[test]
fn capacity_accepts_snr_parameterization() {
    let (code, via_snr, _) = run_cli(&["capacity", "--nbar", "1", "--snr", "3"]);
    assert_eq!(code, 0);
    let (_, via_noise, _) = run_cli(&["capacity", "--nbar", "1", "--noise", "0.3333333333333333"]);
    assert_eq!(via_snr, via_noise);
}

#[test]
fn rate_reports_all_fields() {
    let (code, out, _) = run_cli(&[
        "rate", "--nbar", "1", "--noise", "0.3333", "--memory", "0.5", "--eta", "1", "--y", "0",
    ]);
    assert_eq!(code, 0);
    for key in ["lambda_out", "lambda_mixture", "entropy_out", "entropy_mixture", "rate"] {
        assert!(out.contains(&format!("{key}: ")), "missing {key} in {out}");
    }
    assert!(out.contains("rate: 0.00000000000"), "eta=1 carries nothing: {out}");
}

#[test]
fn rate_accepts_negative_correlation() {
    let (code, out, err) = run_cli(&[
        "rate", "--nbar", "1", "--noise", "0.3", "--memory", "0.5", "--eta", "0.2", "--y", "-0.5",
    ]);
    assert_eq!(code, 0, "stderr: {err}");
    assert!(out.contains("rate: "));
}

#[test]
fn optimize_reports_headline_numbers() {
    let (code, out, _) = run_cli(&[
        "optimize", "--nbar", "1", "--noise", "0.3333333333", "--memory", "0.7",
    ]);
    assert_eq!(code, 0);
    let field = |key: &str|
        out.lines()
            .find(|l| l.starts_with(&format!("{key}: ")))
            .and_then(|l| l.split(": ").nth(1))
            .and_then(|v| v.parse::<f64>().ok())
            .unwrap_or_else(|| panic!("missing {key} in {out}"));
    assert!((field("gain") - 1.108).abs() < 0.005);
    assert!((field("squeezing_db") - 3.8).abs() < 0.1);
    assert!(field("eta_star") > 0.1 && field("eta_star") < 0.3);
}

#[test]
fn gain_prints_bare_number() {
    let (code, out, _) = run_cli(&["gain", "--nbar", "1", "--snr", "3", "--memory", "0.7"]);
    assert_eq!(code, 0);
    let gain: f64 = out.trim().parse().unwrap();
    assert!((gain - 1.108).abs() < 0.005);
}

#[test]
fn json_output_is_machine_readable() {
    let (code, out, _) = run_cli(&[
        "optimize", "--nbar", "1", "--noise", "0.3333333333", "--memory", "0.7",
        "--format", "json",
    ]);
    assert_eq!(code, 0);
    let parsed: serde_json::Value = serde_json::from_str(&out).unwrap();
    for key in ["eta_star", "y_star", "capacity", "squeezing_db", "gain"] {
        assert!(parsed.get(key).is_some(), "missing {key}");
    }

    let (code, out, _) = run_cli(&["capacity", "--nbar", "1", "--noise", "0", "--format", "json"]);
    assert_eq!(code, 0);
    let parsed: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(parsed["capacity_bits"].as_f64().unwrap(), 2.0);
}

#[test]
fn sweep_writes_csv_to_stdout() {
    let (code, out, _) = run_cli(&["sweep", "--figure", "1"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next().unwrap(), "eta,x=0,x=0.3,x=0.5,x=0.7,x=1");
    assert_eq!(lines.count(), 41);
    assert!(out.ends_with('\n'));
}

#[test]
fn sweep_writes_files_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gain.csv");
    let path_str = path.to_str().unwrap();
    // restrict to a cheap argument set by overriding the snr only
    let args = ["sweep", "--figure", "4", "--snr", "3", "--out", path_str];
    let (code, out, err) = run_cli(&args);
    assert_eq!(code, 0, "stderr: {err}");
    assert!(out.is_empty());
    let first = std::fs::read(&path).unwrap();
    run_cli(&args);
    let second = std::fs::read(&path).unwrap();
    assert_eq!(first, second);
    assert!(String::from_utf8(first).unwrap().starts_with("nbar,x=0,"));
}

#[test]
fn verify_passes_and_is_deterministic() {
    let args = ["verify", "--seed", "11", "--samples", "10000"];
    let (code, first, err) = run_cli(&args);
    assert_eq!(code, 0, "stderr: {err}");
    assert!(first.contains("seed: 11"));
    assert!(first.contains("spectrum-agreement: PASS"));
    assert!(first.contains("degenerate-spectrum-agreement: PASS"));
    assert!(first.contains("monte-carlo-noise: PASS"));
    assert!(first.contains("optimizer-vs-grid: PASS"));
    assert!(first.ends_with("verification: PASS\n"));
    let (_, second, _) = run_cli(&args);
    assert_eq!(first, second);
}

#[test]
fn usage_errors_exit_with_one() {
    let (code, _, err) = run_cli(&["capacity", "--nbar", "1", "--noise", "0.3", "--bogus"]);
    assert_eq!(code, 1);
    assert!(err.contains("--bogus"), "{err}");

    let (code, _, err) = run_cli(&[
        "optimize", "--nbar", "1", "--noise", "0.3", "--memory", "1.5",
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("--memory"), "{err}");
    assert!(err.contains("[0, 1]"), "{err}");

    let (code, _, err) = run_cli(&["rate", "--nbar", "1", "--noise", "0.3", "--memory", "0.5",
        "--eta", "0", "--y", "1.5"]);
    assert_eq!(code, 1);
    assert!(err.contains("--y"), "{err}");

    // exactly one of --noise/--snr
    let (code, _, _) = run_cli(&["capacity", "--nbar", "1"]);
    assert_eq!(code, 1);
    let (code, _, _) = run_cli(&["capacity", "--nbar", "1", "--noise", "0.3", "--snr", "3"]);
    assert_eq!(code, 1);

    let (code, _, err) = run_cli(&["sweep", "--figure", "5"]);
    assert_eq!(code, 1);
    assert!(err.contains("--figure"), "{err}");

    let (code, _, err) = run_cli(&["verify", "--samples", "100"]);
    assert_eq!(code, 1);
    assert!(err.contains("--samples"), "{err}");
}

#[test]
fn unwritable_output_path_names_the_flag() {
    let (code, _, err) = run_cli(&[
        "sweep", "--figure", "1", "--out", "/nonexistent-dir/sweep.csv",
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("--out"), "{err}");
    assert!(err.contains("/nonexistent-dir/sweep.csv"), "{err}");
}

#[test]
fn budget_sweeps_reject_noise_override() {
    let (code, _, err) = run_cli(&["sweep", "--figure", "2", "--noise", "0.3"]);
    assert_eq!(code, 1);
    assert!(err.contains("--snr"), "{err}");
}

#[test]
fn numerical_overflow_exits_with_two() {
    let (code, _, err) = run_cli(&["capacity", "--nbar", "9e307", "--noise", "9e307"]);
    assert_eq!(code, 2);
    assert!(err.contains("finite"), "{err}");
}

#[test]
fn help_exits_cleanly() {
    let (code, out, _) = run_cli(&["--help"]);
    assert_eq!(code, 0);
    for subcommand in ["capacity", "rate", "optimize", "gain", "sweep", "verify"] {
        assert!(out.contains(subcommand), "help misses {subcommand}");
    }
}

#[test]
fn in_process_runs_are_byte_identical() {
    let args = ["optimize", "--nbar", "1", "--noise", "0.3333333333", "--memory", "0.7"];
    let (_, first, _) = run_cli(&args);
    let (_, second, _) = run_cli(&args);
    assert_eq!(first, second);
}
