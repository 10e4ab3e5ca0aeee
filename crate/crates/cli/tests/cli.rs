//! End-to-end tests of the binary: flag validation, report formats, cache
//! behaviour and byte-determinism.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_simple-spectrum"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf8 stderr")
}

#[test]
fn thirteen_group_example() {
    let out = run(&["--pi", "2,3,5,11,37,61,13421", "--format", "text"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.pop(), Some("13 groups"));
    let mut got = lines;
    got.sort_unstable();
    let mut expected = vec![
        "A5", "A6", "U5(2)", "L2(3^5)", "S4(3)", "L2(11)", "L2(11^2)", "S4(11)", "U3(11)",
        "U4(11)", "U5(11)", "M11", "M12",
    ];
    expected.sort_unstable();
    assert_eq!(got, expected);
}

#[test]
fn empty_result_still_prints_a_summary() {
    let out = run(&["--pi", "2,3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "0 groups\n");
}

#[test]
fn non_prime_entry_is_a_usage_error() {
    let out = run(&["--pi", "2,4,5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("4 is not prime (entry 1)"));
}

#[test]
fn conflicting_sources_are_rejected() {
    let out = run(&["--pi", "2,3", "--max-prime", "7"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn a_source_is_required() {
    let out = run(&[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_flags_are_rejected() {
    let out = run(&["--max-prime", "7", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn max_prime_below_two_is_a_usage_error() {
    let out = run(&["--max-prime", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("empty prime universe"));
}

#[test]
fn tsv_and_jsonl_record_counts_match_the_summary() {
    let out = run(&["--max-prime", "100", "--format", "tsv"]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    let summary = lines.last().unwrap();
    assert!(summary.starts_with("# "));
    let count: usize = summary
        .trim_start_matches("# ")
        .split(' ')
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert_eq!(lines.len() - 1, count);
    for line in &lines[..lines.len() - 1] {
        assert_eq!(line.split('\t').count(), 7, "tsv column count in {line}");
    }

    let out = run(&["--max-prime", "100", "--format", "jsonl"]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    let summary: serde_json::Value = serde_json::from_str(lines.last().unwrap()).unwrap();
    assert_eq!(summary["total"].as_u64().unwrap() as usize, lines.len() - 1);
    let first: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
    for key in [
        "name",
        "family",
        "p",
        "k",
        "subscript",
        "spectrum",
        "aliases",
        "max_prime",
        "spectrum_size",
    ] {
        assert!(first.get(key).is_some(), "missing jsonl key {key}");
    }
}

#[test]
fn pi_file_source_works() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pi.txt");
    std::fs::write(&path, "2, 3\n5\n").unwrap();
    let out = run(&["--pi-file", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.ends_with("3 groups\n"), "got: {text}");
}

#[test]
fn missing_pi_file_is_an_io_error() {
    let out = run(&["--pi-file", "/nonexistent/pi.txt"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn output_is_identical_across_thread_counts() {
    let reference = run(&["--max-prime", "200", "--threads", "1", "--format", "jsonl"]);
    for threads in ["4", "16"] {
        let out = run(&["--max-prime", "200", "--threads", threads, "--format", "jsonl"]);
        assert_eq!(out.stdout, reference.stdout, "threads = {threads}");
    }
}

#[test]
fn report_range_restricts_per_prime_reports() {
    let out = run(&[
        "--max-prime",
        "50",
        "--report",
        "by-max-prime",
        "--report-range",
        "10,20",
    ]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(*lines.last().unwrap(), "4 classes");
    let keys: Vec<&str> = lines[..lines.len() - 1]
        .iter()
        .map(|l| l.split(" | ").next().unwrap())
        .collect();
    assert_eq!(keys, vec!["11", "13", "17", "19"]);
}

#[test]
fn cache_roundtrip_and_invalidation() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("run.cache");
    let cache_str = cache.to_str().unwrap();

    let first = run(&["--max-prime", "100", "--cache", cache_str]);
    assert!(first.status.success());
    assert!(cache.exists());

    // replay from cache: identical bytes, no warnings
    let second = run(&["--max-prime", "100", "--cache", cache_str]);
    assert!(second.status.success());
    assert_eq!(first.stdout, second.stdout);
    assert!(stderr(&second).is_empty());

    // a different k-margin must miss (digest includes it)
    let other = run(&["--max-prime", "100", "--cache", cache_str, "--k-margin", "2"]);
    assert!(other.status.success());
    assert_eq!(first.stdout, other.stdout);
    assert!(stderr(&other).contains("different configuration"));

    // corruption is detected, warned about and recomputed through
    std::fs::write(&cache, b"SSPEC1 garbage").unwrap();
    let repaired = run(&["--max-prime", "100", "--cache", cache_str]);
    assert!(repaired.status.success());
    assert_eq!(first.stdout, repaired.stdout);
    assert!(stderr(&repaired).contains("unreadable cache"));
}

#[test]
fn cache_env_var_is_honoured() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("env.cache");
    let out = Command::new(env!("CARGO_BIN_EXE_simple-spectrum"))
        .args(["--max-prime", "50"])
        .env("SIMPLE_SPECTRUM_CACHE", &cache)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(cache.exists());
}

#[test]
fn nongeneric_table_lists_only_nongeneric_classes() {
    let out = run(&["--max-prime", "50", "--report", "nongeneric-table"]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    // S_5 = {A5, A6, S4(3)} has exactly one non-generic member
    assert!(lines.contains(&"5 | 3 | S4(3)"), "got: {text}");
    let summary = lines.last().unwrap();
    let total: usize = summary.split(' ').next().unwrap().parse().unwrap();
    let listed: usize = lines[..lines.len() - 1]
        .iter()
        .map(|l| l.split(" | ").nth(2).unwrap().split(", ").count())
        .sum();
    assert_eq!(total, listed);
}
