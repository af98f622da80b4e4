use std::process::Command;

use gapcert::cli::{dispatch_with_io, EXIT_OK, EXIT_PRECONDITION, EXIT_USAGE};
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("gapcert").chain(args.iter().copied());
    let code = dispatch_with_io(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn gap_hypercube_w() {
    let (code, out, _) = run(&["gap", "--family", "hypercube", "--n-slots", "4", "--norm", "W"]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert!((v["delta0"].as_f64().unwrap() - 1.0 / 15.0).abs() < 1e-15);
    assert_eq!(v["family"], "hypercube_W");
}

#[test]
fn gap_bernoulli_reports_ell() {
    let (code, out, _) = run(&["gap", "--family", "bernoulli", "--lambda", "0.618"]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert_eq!(v["ell"], 2);
    assert!((v["delta0"].as_f64().unwrap() - 1.0 / 7.0).abs() < 1e-15);
}

#[test]
fn bound_theorem_a() {
    let (code, out, _) = run(&["bound", "--theorem", "A", "--delta0", "0.5", "--norm", "1", "--n", "200", "--a", "0.1"]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert!((v["raw"].as_f64().unwrap() - 2.327995255412158).abs() < 1e-12);
    assert_eq!(v["regime"], "gaussian");
    assert_eq!(v["theorem"], "A");
}

#[test]
fn bound_precondition_exit_code() {
    let (code, out, err) = run(&["bound", "--theorem", "doeblin", "--beta", "0.5", "--n", "10", "--a", "0.1"]);
    assert_eq!(code, EXIT_PRECONDITION);
    assert!(err.contains("N_TOO_SMALL"));
    assert!(json(&out)["valid"] == Value::Bool(false));
}

#[test]
fn bound_csv_format() {
    let (code, out, _) =
        run(&["--format", "csv", "bound", "--theorem", "bv", "--ell", "2", "--norm", "2", "--n", "480", "--a", "0.05"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "theorem,raw,clipped,regime,valid,violations");
    assert!(lines[1].starts_with("bv,"));
}

#[test]
fn plan_outputs_minimal_n() {
    let (code, out, _) = run(&["plan", "--delta0", "0.5", "--norm", "1", "--a", "0.1", "--p", "0.05"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(json(&out)["n"], 11757);
}

#[test]
fn domain_error_exit_code() {
    let (code, _, err) = run(&["gap", "--family", "doeblin", "--beta", "1.5"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("beta"));
}

#[test]
fn hist_rows_and_mass() {
    let (code, out, _) = run(&["hist", "--lambda", "0.618", "--points", "20000", "--runs", "3", "--seed", "4"]);
    assert_eq!(code, EXIT_OK);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("bin_left,bin_right,mass"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 500);
    let total: f64 = rows.iter().map(|r| r.split(',').nth(2).unwrap().parse::<f64>().unwrap()).sum();
    assert!((total - 1.0).abs() < 1e-9);
}

#[test]
fn simulate_is_deterministic_across_threads() {
    let args = |threads: &'static str| {
        vec!["--threads", threads, "simulate", "--family", "hypercube", "--n-slots", "4", "--replicas", "300", "--seed", "11"]
    };
    let (c1, a, _) = run(&args("1"));
    let (c2, b, _) = run(&args("3"));
    assert_eq!((c1, c2), (EXIT_OK, EXIT_OK));
    assert_eq!(a, b);
    assert!(a.starts_with("a,p_hat,wilson_upper,bound_raw,bound_clipped,regime\n"));
    assert_eq!(a.lines().count(), 11);
}

#[test]
fn simulate_doeblin_from_kernel_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("kernel.json");
    std::fs::write(&path, r#"{"size": 2, "data": [0.5, 0.5, 0.25, 0.75]}"#).unwrap();
    let (code, out, _) = run(&[
        "simulate", "--family", "doeblin", "--kernel", path.to_str().unwrap(), "--f", "1,-1",
        "--n", "2000", "--replicas", "200", "--seed", "3", "--a-grid", "0.1,0.2",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 3);
}

#[test]
fn config_file_and_output_path() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    let out_path = dir.path().join("gap.json");
    std::fs::write(&cfg, r#"{"command": "gap", "family": "doeblin", "beta": 0.5}"#).unwrap();
    let (code, out, _) = run(&["--config", cfg.to_str().unwrap(), "--output", out_path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    let v = json(&std::fs::read_to_string(&out_path).unwrap());
    assert!((v["delta0"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-15);
}

#[test]
fn binary_matches_library_entry_point() {
    let bin = env!("CARGO_BIN_EXE_gapcert");
    let output = Command::new(bin).args(["gap", "--family", "custom", "--c", "4", "--theta", "0.75"]).output().unwrap();
    assert!(output.status.success());
    let v = json(&String::from_utf8(output.stdout).unwrap());
    assert!((v["delta0"].as_f64().unwrap() - 1.0 / 16.0).abs() < 1e-15);
    let bad = Command::new(bin).args(["bound", "--theorem", "Z"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
}

#[test]
fn verify_suite_passes() {
    let (code, out, _) = run(&["verify", "--trials", "20", "--seed", "1"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.lines().all(|l| l.starts_with("PASS")));
}

#[test]
fn hist_full_size_is_byte_identical_on_disk() {
    let dir = tempfile::tempdir().unwrap();
    let paths = [dir.path().join("a.csv"), dir.path().join("b.csv")];
    for p in &paths {
        let (code, _, _) = run(&[
            "hist", "--lambda", "0.618", "--bins", "500", "--runs", "30", "--points", "1000000", "--seed", "7",
            "--output", p.to_str().unwrap(),
        ]);
        assert_eq!(code, EXIT_OK);
    }
    let (a, b) = (std::fs::read(&paths[0]).unwrap(), std::fs::read(&paths[1]).unwrap());
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    let total: f64 = text.lines().skip(1).map(|r| r.rsplit(',').next().unwrap().parse::<f64>().unwrap()).sum();
    assert_eq!(text.lines().count(), 501);
    assert!((total - 1.0).abs() < 1e-9);
}
