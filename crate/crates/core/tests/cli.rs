mod common;

use std::path::PathBuf;
use std::process::{Command, Output};

use common::{golden_path, job_path};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hilbert-sally")).args(args).output().unwrap()
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("hilbert-sally-{}-{name}", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path
}

fn run_text(name: &str, text: &str) -> Output {
    let path = scratch(name, text);
    let out = bin(&["--job", path.to_str().unwrap()]);
    std::fs::remove_file(path).ok();
    out
}

const PLANE: &str = "[ring]\nvariables = x, y\n";

#[test]
fn cubes_job_matches_golden_on_stdout() {
    let out = bin(&["--job", job_path("cubes.job").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let golden = std::fs::read_to_string(golden_path("cubes.json")).unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden);
    assert!(String::from_utf8(out.stderr).unwrap().contains("case R1"));
}

#[test]
fn out_flag_writes_the_same_bytes() {
    let target = std::env::temp_dir().join(format!("hilbert-sally-{}-out.json", std::process::id()));
    let out = bin(&["--job", job_path("cubes.job").to_str().unwrap(), "--out", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&target).unwrap();
    std::fs::remove_file(&target).ok();
    assert_eq!(written, std::fs::read_to_string(golden_path("cubes.json")).unwrap());
}

#[test]
fn overrides_reach_the_report() {
    let out = bin(&["--job", job_path("maximal.job").to_str().unwrap(), "--seed", "9", "--field", "q"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["seed"], 9);
    assert_eq!(v["field"], "q");
    assert_eq!(v["e"], serde_json::json!([1, 0, 0]));
}

#[test]
fn selftest_passes() {
    let out = bin(&["--job", job_path("selftest.job").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(bin(&["--job", "/definitely/not/here.job"]).status.code(), Some(2));
    let unknown = format!(
        "{PLANE}[ideal I]\ngenerators = x^2, y^2\n[filtration]\nkind = adic\nbase = J\n[task]\ncommand = hilbert\n"
    );
    assert_eq!(run_text("unknown.job", &unknown).status.code(), Some(2));
    let narrow = format!("{PLANE}[ideal I]\ngenerators = x^2, y^2\n[filtration]\nkind = adic\nbase = I\n[task]\ncommand = hilbert\nmax_n = 3\n");
    assert_eq!(run_text("narrow.job", &narrow).status.code(), Some(2));
    let garbage = format!(
        "{PLANE}[ideal I]\ngenerators = x^^2\n[filtration]\nkind = adic\nbase = I\n[task]\ncommand = hilbert\n"
    );
    assert_eq!(run_text("garbage.job", &garbage).status.code(), Some(2));
}

#[test]
fn hypothesis_errors_exit_3() {
    let line =
        format!("{PLANE}[ideal I]\ngenerators = x^2\n[filtration]\nkind = adic\nbase = I\n[task]\ncommand = hilbert\n");
    let out = run_text("line.job", &line);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8(out.stderr).unwrap().contains("m-primary"));
}

#[test]
fn short_tables_exit_4() {
    let short = format!(
        "{PLANE}[ideal I]\ngenerators = x^2, y^2\n[ideal K]\ngenerators = x^4, x^2*y^2, y^4\n\
         [filtration]\nkind = table\nentries = I, K\n[task]\ncommand = hilbert\n"
    );
    assert_eq!(run_text("short.job", &short).status.code(), Some(4));
}
