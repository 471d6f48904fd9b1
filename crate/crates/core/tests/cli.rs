//! The `pgw` binary: exit codes, input handling and report determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn pgw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pgw"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, String) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = pgw(&full);
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

/// The report text with the `timing` object cut out.
fn without_timing(report: &str) -> String {
    let start = report.find("\"timing\": {").expect("timing section");
    let end = start + report[start..].find('}').unwrap();
    format!("{}{}", &report[..start], &report[end + 1..])
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pgw-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn check_on_default_group_succeeds() {
    let (code, out) = json(&["check"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["hypotheses"]["theorem_applicable"], true);
    assert_eq!(v["group"]["order"], 2187);
    assert_eq!(v["group"]["class"], 4);
}

#[test]
fn construct_on_heisenberg_is_not_applicable() {
    let out = pgw(&["construct", "h27"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("all_maximals_nonabelian          false"));
}

#[test]
fn input_errors_exit_with_2() {
    assert_eq!(pgw(&["info", "/no/such/file.pc"]).status.code(), Some(2));
    let composite = temp_file("p4.pc", "name x\np 4\nn 1\n");
    let out = pgw(&["info", composite.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let inconsistent = temp_file("bad.pc", "name bad\np 3\nn 3\npow 1 = g2^1\ncomm 2 1 = g3^1\n");
    assert_eq!(pgw(&["check", inconsistent.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(pgw(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(pgw(&["demo", "h27"]).status.code(), Some(2));
}

#[test]
fn files_and_built_in_names_agree() {
    let path = temp_file("h27.pc", pgw::corpus::source("h27").unwrap());
    let (code_file, from_file) = json(&["info", path.to_str().unwrap()]);
    let (code_name, from_name) = json(&["info", "h27"]);
    assert_eq!((code_file, code_name), (0, 0));
    assert_eq!(without_timing(&from_file), without_timing(&from_name));
}

#[test]
fn count_reports_oracle_section() {
    let (code, out) = json(&["count", "c9"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["oracle"]["total"], 6);
    assert_eq!(v["oracle"]["inner"], 1);
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(
        keys,
        ["group", "hypotheses", "oracle", "timing", "verification", "witness"]
    );
}

#[test]
fn report_file_matches_stdout() {
    let path = std::env::temp_dir().join(format!("pgw-report-{}.json", std::process::id()));
    let (code, out) = json(&["construct", "mc243", "--report", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(without_timing(&written), without_timing(&out));
}

#[test]
fn reports_are_deterministic() {
    let a = json(&["construct", "mc243", "--with-oracle", "--jobs", "1"]);
    let b = json(&["construct", "mc243", "--with-oracle", "--jobs", "8"]);
    let c = json(&["construct", "mc243", "--with-oracle", "--jobs", "8"]);
    assert_eq!(a.0, 0);
    assert_eq!(without_timing(&a.1), without_timing(&b.1));
    assert_eq!(without_timing(&b.1), without_timing(&c.1));
}

#[test]
fn budget_exhaustion_is_an_input_error() {
    let out = pgw(&["count", "--budget", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}
