//! Drives the `charsum` binary end to end.

use std::process::{Command, Output};

fn charsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_charsum")).args(args).env_remove("KM_THREADS").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn drop_column(csv: &str, name: &str) -> String {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let col = header.iter().position(|&h| h == name).unwrap();
    csv.lines()
        .map(|l| l.split(',').enumerate().filter(|(i, _)| *i != col).map(|(_, f)| f).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn verify_exit_codes() {
    assert_eq!(charsum(&["verify", "--primes", "4"]).status.code(), Some(2));
    assert_eq!(charsum(&["verify", "--primes", "5,7,11,13", "--kmax", "1"]).status.code(), Some(0));
    let tampered = charsum(&["verify", "--primes", "5,7,11,13", "--kmax", "1", "--tol", "1e-20"]);
    assert_eq!(tampered.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&tampered.stderr).contains("first failure: p="));
}

#[test]
fn verify_flags_quoted_moment_identities() {
    let o = charsum(&["verify", "--primes", "7"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("check=gauss-product-moment k=2 n=1"), "{err}");
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let checks = report["checks"].as_array().unwrap();
    assert!(checks
        .iter()
        .filter(|c| c["check"].as_str().unwrap().ends_with("-orthogonality"))
        .all(|c| c["pass"].as_bool().unwrap()));
}

#[test]
fn moments_p7_row() {
    let o = charsum(&["moments", "--primes", "7", "--kappa", "1", "--n", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let row: Vec<&str> = out.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(&row[..2], &["7", "abs"]);
    assert!((row[6].parse::<f64>().unwrap() - 3.428571).abs() < 1e-6);
    assert_eq!(row[8].parse::<f64>().unwrap(), 7.0);
}

#[test]
fn output_independent_of_thread_count() {
    let args = ["moments", "--primes", "101,1009,2003,10007", "--kappa", "0.5,1,2", "--kl", "2:1,2:2", "--n", "1,2,-1"];
    let runs: Vec<String> = ["1", "4", "8"]
        .iter()
        .map(|t| {
            let mut a = args.to_vec();
            a.extend(["--threads", t]);
            drop_column(&stdout(&charsum(&a)), "wall_ms")
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
    assert_eq!(runs[0], runs[2]);

    let via_env = Command::new(env!("CARGO_BIN_EXE_charsum"))
        .args(args)
        .env("KM_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(drop_column(&stdout(&via_env), "wall_ms"), runs[0]);
    let bad_env = Command::new(env!("CARGO_BIN_EXE_charsum")).args(args).env("KM_THREADS", "zero").output().unwrap();
    assert_eq!(bad_env.status.code(), Some(2));
}

#[test]
fn equidist_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = charsum(&["equidist", "--primes", "101,1009", "--law", "arcsine-abs,disk-mu", "--out", out, "--format", "csv,json,svg"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.path().join("equidist.csv")).unwrap();
    assert_eq!(csv.lines().count(), 5);
    let svg = std::fs::read_to_string(dir.path().join("equidist_hist_p1009_arcsine-abs.svg")).unwrap();
    assert!(svg.contains("viewBox=\"0 0 800 500\"") && svg.contains("<polyline"));
    assert!(dir.path().join("equidist.json").exists());
}

#[test]
fn lvalues_and_scan() {
    let o = charsum(&["lvalues", "--primes", "1009", "--kappa", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("p,kind,s,kappa,k,l,n,re,im,predicted"));
    assert!(out.contains("const_frak_s"));
    assert_eq!(charsum(&["lvalues", "--primes", "100003", "--s", "1/2"]).status.code(), Some(2));

    let o = charsum(&["scan", "--prime-range", "100:130"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1 + 6);
}

#[test]
fn fft_mode_limits() {
    assert_eq!(charsum(&["scan", "--primes", "1009", "--fft", "verify-both"]).status.code(), Some(0));
    assert_eq!(charsum(&["scan", "--primes", "2011", "--fft", "verify-both"]).status.code(), Some(2));
    assert_eq!(charsum(&["scan", "--primes", "101", "--fft", "slow"]).status.code(), Some(2));
}
