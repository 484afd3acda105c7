use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use spantrace::cli::report::Report;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spantrace"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn check_passes_on_two_point() {
    let o = run(&["check", &fixture("two_point.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn corrupted_expectation_exits_one_with_both_values() {
    let o = run(&["check", &fixture("two_point_corrupted.json"), "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let r = Report::from_json(&stdout(&o)).unwrap();
    let bad = r.checks.iter().find(|c| c.detail.is_some() && c.lhs.is_some()).unwrap();
    assert!(bad.lhs.as_ref().unwrap().values().any(|&v| v == 3));
    assert!(bad.rhs.as_ref().unwrap().values().any(|&v| v == 4));
}

#[test]
fn missing_stalk_exits_two_with_pointer() {
    let o = run(&["check", &fixture("missing_stalk.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("/sheaves/L/stalks/b"), "{}", stderr(&o));
}

#[test]
fn missing_file_exits_two() {
    assert_eq!(run(&["check", "/nonexistent/instance.json"]).status.code(), Some(2));
}

#[test]
fn unknown_suite_exits_two() {
    let o = run(&["fuzz", "--suite", "lvv", "--seed", "1", "--count", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_flags_exit_two() {
    assert_eq!(run(&["fuzz", "--suite", "lv", "--seed", "x", "--count", "1"]).status.code(), Some(2));
    assert_eq!(run(&["fuzz", "--suite", "lv", "--seed", "1"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let inverted = run(&["fuzz", "--suite", "lv", "--seed", "1", "--count", "1", "--deg-min", "3", "--deg-max", "-3"]);
    assert_eq!(inverted.status.code(), Some(2));
}

#[test]
fn small_lv_fuzz_passes() {
    let o = run(&["fuzz", "--suite", "lv", "--seed", "1", "--count", "1", "--max-set", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn json_report_marks_passes() {
    let o = run(&["fuzz", "--suite", "global", "--seed", "3", "--count", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"status\":\"pass\""));
}

#[test]
fn empty_suite_has_empty_checks() {
    let o = run(&["fuzz", "--suite", "lv", "--seed", "1", "--count", "0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"checks\":[]"));
}

#[test]
fn report_rerenders_saved_json() {
    let saved = stdout(&run(&["fuzz", "--suite", "oracle", "--seed", "7", "--count", "3", "--format", "json"]));
    let mut child = Command::new(env!("CARGO_BIN_EXE_spantrace"))
        .args(["report", "--format", "json"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(saved.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), saved);

    let text = run(&["report", "--input", &fixture("two_point.json")]);
    assert_eq!(text.status.code(), Some(2));
}

#[test]
fn lv_subcommand_on_fixture() {
    let o = run(&["lv", &fixture("lv_seed42.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(run(&["lv", &fixture("two_point.json")]).status.code(), Some(2));
}

#[test]
fn trace_prints_fixed_point_values() {
    let o = run(&["trace", &fixture("two_point.json")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("trace u: {(c0,a)=3}"), "{out}");
    assert!(out.contains("trace v:"), "{out}");
    assert!(out.contains("(b,b)=2"), "{out}");
}
