//! End-to-end runs of the `cubicdens` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn cubicdens(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubicdens"))
        .args(args)
        .env_remove("CUBIC_DENSITY_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch_dir(tag: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("cubicdens-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    d
}

#[test]
fn verify_golden_all() {
    let o = cubicdens(&["verify-golden", "--all"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 8);
    assert!(out.lines().all(|l| l.ends_with(": OK")), "{out}");
}

#[test]
fn oracle_matches_closed_form() {
    let o = cubicdens(&["oracle", "--n", "2", "--q", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("N[3] = 8  formula 8  OK"));
    let o = cubicdens(&["--format", "json", "oracle", "--n", "1", "--q", "2", "--cond", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["agree"], true);
    assert_eq!(v["enumerated"]["total"], 2);
}

#[test]
fn rho_beyond_eight_is_one() {
    let o = cubicdens(&["rho", "--n", "9", "--digits", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1\n");
}

#[test]
fn rho_reports_certificate() {
    let o = cubicdens(&["--format", "json", "rho", "--n", "5", "--digits", "21"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["A"], 2);
    assert_eq!(v["digits"], 21);
    assert!(v["value"].as_str().unwrap().starts_with("0.999999999999998"));
    let err: f64 = v["error_bound"].as_str().unwrap().parse().unwrap();
    assert!(err > 0.0 && err <= 1e-21);
}

#[test]
fn json_output_is_deterministic() {
    let args = ["--format", "json", "sample-padic", "--p", "3", "--samples", "3000", "--precision", "20", "--seed", "9"];
    let a = cubicdens(&args);
    let b = cubicdens(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let args = ["--format", "json", "zeta-tail", "--A", "10", "--s", "3"];
    assert_eq!(cubicdens(&args).stdout, cubicdens(&args).stdout);
}

#[test]
fn cache_is_transparent_and_revalidated() {
    let dir = scratch_dir("cache");
    let d = dir.to_str().unwrap();
    let cold = cubicdens(&["--cache-dir", d, "--format", "json", "solve", "--n", "3"]);
    let file = dir.join("rho_n3.json");
    assert!(file.exists());
    let warm = cubicdens(&["--cache-dir", d, "--format", "json", "solve", "--n", "3"]);
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(cold.stdout, cubicdens(&["--format", "json", "solve", "--n", "3"]).stdout);

    // A wrong record is rejected and replaced.
    let good = std::fs::read_to_string(&file).unwrap();
    std::fs::write(&file, good.replacen("\"g\":[", "\"g\":[7,", 1)).unwrap();
    let healed = cubicdens(&["--cache-dir", d, "--format", "json", "solve", "--n", "3"]);
    assert_eq!(healed.stdout, cold.stdout);
    assert_eq!(std::fs::read_to_string(&file).unwrap(), good);

    let env_dir = scratch_dir("env");
    let o = Command::new(env!("CARGO_BIN_EXE_cubicdens"))
        .args(["solve", "--n", "2"])
        .env("CUBIC_DENSITY_CACHE", &env_dir)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(env_dir.join("rho_n2.json").exists());
    std::fs::remove_dir_all(dir).unwrap();
    std::fs::remove_dir_all(env_dir).unwrap();
}

#[test]
fn usage_errors() {
    assert_eq!(cubicdens(&["rho", "--n", "3"]).status.code(), Some(2));
    assert_eq!(cubicdens(&["sample-padic", "--p", "4"]).status.code(), Some(2));
    assert_eq!(cubicdens(&["frobnicate"]).status.code(), Some(2));
    let o = cubicdens(&["rho", "--n", "2", "--digits", "10", "--max-A", "100"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8(o.stderr).unwrap().contains("best achieved"));
}

#[test]
fn tables_report() {
    let o = cubicdens(&["--format", "json", "tables"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["asymptotics"].as_array().unwrap().len(), 7);
    assert_eq!(v["densities"][0]["rho"], "0.999927");
    assert_eq!(v["accuracy"].as_array().unwrap().len(), 14);
}
