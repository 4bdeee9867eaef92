//! End-to-end tests against the built `torushom` binary: output round trips,
//! the exit-code contract, cache persistence, and deterministic reruns.

use std::path::Path;
use std::process::{Command, Output};

use torushom_cli::formats::{parse_json, parse_text};
use torushom_core::invariants::{column_invariant, reduced_invariant};
use torushom_core::recursion::MemoTable;

fn torushom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torushom"))
        .args(args)
        .env_remove("TORUSHOM_CACHE")
        .output()
        .expect("binary runs")
}

fn torushom_env(args: &[&str], env: &[(&str, &Path)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_torushom"));
    cmd.args(args).env_remove("TORUSHOM_CACHE");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn compute_text_parses_back() {
    let out = torushom(&[
        "compute", "--torus", "1", "1", "--color", "2", "--theory", "column", "--format", "text",
    ]);
    assert!(out.status.success());
    let value = parse_text(stdout(&out).trim()).unwrap();
    let mut memo = MemoTable::new();
    let expected = column_invariant(1, 1, 2, &mut memo).unwrap();
    assert_eq!(value, expected);
}

#[test]
fn compute_json_carries_reduced() {
    let out = torushom(&[
        "compute", "--torus", "2", "3", "--reduced", "--format", "json",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let dto: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(dto["m"], 2);
    assert_eq!(dto["n"], 3);
    let value = parse_json(&dto["value"].to_string()).unwrap();
    let reduced = parse_json(&dto["reduced"].to_string()).unwrap();
    let mut memo = MemoTable::new();
    let expected = column_invariant(2, 3, 1, &mut memo).unwrap();
    assert_eq!(value, expected);
    assert_eq!(reduced, reduced_invariant(&expected, 1).unwrap());
}

#[test]
fn state_command_matches_engine() {
    let out = torushom(&["state", "--v", "10", "--w", "10", "--sigma", "1"]);
    assert!(out.status.success());
    let value = parse_text(stdout(&out).trim()).unwrap();
    // p(10, 10) is the T(2,2) state
    let mut memo = MemoTable::new();
    let expected = column_invariant(2, 2, 1, &mut memo).unwrap();
    assert_eq!(value, expected);
}

#[test]
fn state_explain_prints_tree() {
    let out = torushom(&["state", "--v", "0", "--w", "0", "--explain"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("[R6]"));
    assert!(text.contains("[R1]"));
    assert!(text.contains("[base]"));
}

#[test]
fn verify_mirror_exits_zero() {
    let out = torushom(&[
        "verify", "mirror", "--max", "3", "--color-max", "2",
    ]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("mirror: 18/18 passed"));
}

#[test]
fn verify_is_deterministic_across_jobs() {
    let one = torushom(&["verify", "invariance", "--max", "4", "--color-max", "1"]);
    let four = torushom(&[
        "verify", "invariance", "--max", "4", "--color-max", "1", "--jobs", "4",
    ]);
    assert!(one.status.success());
    assert!(four.status.success());
    assert_eq!(stdout(&one), stdout(&four));
}

#[test]
fn invalid_input_exits_two() {
    let out = torushom(&["state", "--v", "10x", "--w", "10"]);
    assert_eq!(out.status.code(), Some(2));
    // mismatched ones counts are invalid states, also exit 2
    let out = torushom(&["state", "--v", "11", "--w", "10"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_flag_exits_two() {
    let out = torushom(&["compute", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cache_roundtrip_and_fingerprint() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("memo.jsonl");
    let args = [
        "compute", "--torus", "2", "3", "--format", "text", "--cache",
    ];
    let mut with_cache: Vec<&str> = args.to_vec();
    let path_str = path.to_str().unwrap();
    with_cache.push(path_str);

    let first = torushom(&with_cache);
    assert!(first.status.success());
    assert!(path.exists());
    let size_after_first = std::fs::metadata(&path).unwrap().len();

    // second run loads the cache and appends nothing
    let second = torushom(&with_cache);
    assert!(second.status.success());
    assert_eq!(stdout(&first), stdout(&second));
    assert_eq!(std::fs::metadata(&path).unwrap().len(), size_after_first);

    // cache-info sees the entries
    let info = torushom(&["cache-info", "--cache", path_str]);
    assert!(info.status.success());
    assert!(stdout(&info).contains("entries:"));

    // a wrong fingerprint is refused with exit 2
    std::fs::write(
        &path,
        "{\"format\":\"torushom-memo-v1\",\"fingerprint\":\"0000000000000000\"}\n",
    )
    .unwrap();
    let refused = torushom(&with_cache);
    assert_eq!(refused.status.code(), Some(2));
}

#[test]
fn cache_env_variable_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("env-memo.jsonl");
    let out = torushom_env(
        &["compute", "--torus", "2", "2", "--format", "text"],
        &[("TORUSHOM_CACHE", path.as_path())],
    );
    assert!(out.status.success());
    assert!(path.exists());
}

#[test]
fn table_streams_reports() {
    let out = torushom(&[
        "table", "--max", "2", "--color-max", "1", "--format", "json",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.trim().lines().collect();
    assert_eq!(lines.len(), 4); // (m, n) in [1,2]^2, k = 1
    for line in lines {
        let dto: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(dto["unit_vs_mirror"]["sign"] == "+");
    }
}

#[test]
fn byte_identical_reruns() {
    let args = ["compute", "--torus", "3", "4", "--color", "2", "--format", "json"];
    let a = torushom(&args);
    let b = torushom(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn latex_output_is_a_fraction() {
    let out = torushom(&["compute", "--torus", "1", "1", "--format", "latex"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("\\frac{"));
}
