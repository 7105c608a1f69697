//! End-to-end runs of the compiled binary: exit codes, plain-text output
//! shapes, on-disk artifacts and the JSON report contract.

use std::io::Write as _;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_satinfolab"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .expect("stdin piped")
        .write_all(input.as_bytes())
        .expect("stdin accepts input");
    child.wait_with_output().expect("binary exits")
}

fn stdout_text(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is utf-8")
}

fn stderr_text(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is utf-8")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

fn report(output: &Output) -> Value {
    serde_json::from_str(&stdout_text(output)).expect("stdout is a JSON report")
}

#[test]
fn solve_prints_a_model_and_exits_ten() {
    let out = run_stdin(&["solve"], "p cnf 2 2\n1 -2 0\n2 0\n");
    assert_eq!(exit_code(&out), 10);
    assert_eq!(stdout_text(&out), "s SATISFIABLE\nv 1 2 0\n");
}

#[test]
fn solve_prints_unsat_and_exits_twenty() {
    let out = run_stdin(&["solve"], "p cnf 1 2\n1 0\n-1 0\n");
    assert_eq!(exit_code(&out), 20);
    assert_eq!(stdout_text(&out), "s UNSATISFIABLE\n");
}

#[test]
fn solve_reads_the_canonical_encoding() {
    let out = run_stdin(&["solve", "--format", "canonical"], "10010\n");
    assert_eq!(exit_code(&out), 10);
    assert_eq!(stdout_text(&out), "s SATISFIABLE\nv 1 0\n");
}

#[test]
fn solve_reads_a_file_argument() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("tiny.cnf");
    std::fs::write(&path, "c a comment\np cnf 1 1\n-1 0\n").expect("write cnf");
    let out = run(&["solve", path.to_str().expect("utf-8 path")]);
    assert_eq!(exit_code(&out), 10);
    assert_eq!(stdout_text(&out), "s SATISFIABLE\nv -1 0\n");
}

#[test]
fn solve_rejects_malformed_input() {
    let out = run_stdin(&["solve"], "not a formula\n");
    assert_eq!(exit_code(&out), 1);
    assert!(stderr_text(&out).contains("error"));

    let out = run_stdin(&["solve", "--format", "canonical"], "10x10\n");
    assert_eq!(exit_code(&out), 1);
}

#[test]
fn solve_honors_the_oracle_cap_env() {
    let mut child = bin();
    child.env("SATINFOLAB_ORACLE_CAP", "2");
    let out = child
        .args(["solve"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .map(|mut c| {
            c.stdin
                .as_mut()
                .expect("stdin piped")
                .write_all(b"p cnf 3 1\n1 2 3 0\n")
                .expect("stdin accepts input");
            c.wait_with_output().expect("binary exits")
        })
        .expect("binary spawns");
    assert_eq!(exit_code(&out), 2);
    assert!(stderr_text(&out).contains("cap"));
}

#[test]
fn enumerate_streams_five_symbol_blocks() {
    let out = run(&["enumerate", "--max-n", "1", "--max-m", "1"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(
        stdout_text(&out),
        "1b0b00bEs\n1b0b01bEs\n1b0b10b1bs\n1b0b11b0bs\n"
    );
    assert!(stderr_text(&out).contains("4 records in 4 blocks"));
}

#[test]
fn enumerate_out_file_matches_the_stream() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("dump.txt");
    let streamed = run(&["enumerate", "--max-n", "1", "--max-m", "2"]);
    let out = run(&[
        "enumerate",
        "--max-n",
        "1",
        "--max-m",
        "2",
        "--out",
        path.to_str().expect("utf-8 path"),
    ]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout_text(&out), "");
    let written = std::fs::read_to_string(&path).expect("dump written");
    assert_eq!(written, stdout_text(&streamed));
}

#[test]
fn table_artifacts_round_trip_on_disk() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("t5.stb");
    let path_str = path.to_str().expect("utf-8 path");

    let built = run(&["table", "build", "--depth", "5", "--out", path_str]);
    assert_eq!(exit_code(&built), 0);
    assert!(stdout_text(&built).contains("leaves: 2 yes, 2 no, 28 invalid"));

    let stats = run(&["table", "stats", path_str]);
    assert_eq!(exit_code(&stats), 0);
    assert!(stdout_text(&stats).contains("depth: 5"));

    let hit = run(&["table", "lookup", path_str, "--key", "10010"]);
    assert_eq!(exit_code(&hit), 0);
    let text = stdout_text(&hit);
    assert!(text.contains("value: sat (n=1, counter=1, model 1)"));
    assert!(text.contains("steps: 5"));

    let miss = run(&["table", "lookup", path_str, "--key", "11111"]);
    assert!(stdout_text(&miss).contains("value: invalid"));
}

#[test]
fn table_rebuilds_are_byte_identical() {
    let dir = tempfile::tempdir().expect("tempdir");
    let first = dir.path().join("a.stb");
    let second = dir.path().join("b.stb");
    for path in [&first, &second] {
        let out = run(&[
            "table",
            "build",
            "--depth",
            "7",
            "--out",
            path.to_str().expect("utf-8 path"),
        ]);
        assert_eq!(exit_code(&out), 0);
    }
    let a = std::fs::read(&first).expect("first build");
    let b = std::fs::read(&second).expect("second build");
    assert_eq!(a, b);
}

#[test]
fn table_guards_exit_with_the_right_codes() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("t.stb");
    let path_str = path.to_str().expect("utf-8 path");

    let too_deep = run(&["table", "build", "--depth", "25", "--out", path_str]);
    assert_eq!(exit_code(&too_deep), 2);

    let built = run(&["table", "build", "--depth", "4", "--out", path_str]);
    assert_eq!(exit_code(&built), 0);
    let bad_key = run(&["table", "lookup", path_str, "--key", "101"]);
    assert_eq!(exit_code(&bad_key), 1);
    assert!(stderr_text(&bad_key).contains("key"));
}

#[test]
fn trbs_encode_then_decode_recovers_the_bits() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("batch.txt");
    let path_str = path.to_str().expect("utf-8 path");

    let encoded = run(&[
        "trbs", "encode", "--n", "3", "--bits", "11111111", "--out", path_str,
    ]);
    assert_eq!(exit_code(&encoded), 0);
    let text = std::fs::read_to_string(&path).expect("batch written");
    assert!(text.starts_with("trbsbatch 1 3 verified 23,2,3,4,24,34,234 8\n11111111\n"));

    let decoded = run(&["trbs", "decode", path_str]);
    assert_eq!(exit_code(&decoded), 0);
    assert_eq!(stdout_text(&decoded), "11111111\n");
    assert_eq!(stderr_text(&decoded), "");
}

#[test]
fn trbs_encode_needs_exactly_one_bit_source() {
    let neither = run(&["trbs", "encode", "--n", "3"]);
    assert_eq!(exit_code(&neither), 1);

    let both = run(&[
        "trbs", "encode", "--n", "3", "--bits", "11111111", "--seed", "1",
    ]);
    assert_eq!(exit_code(&both), 1);
}

#[test]
fn trbs_family_ceiling_exits_two() {
    let out = run(&["trbs", "encode", "--n", "20", "--seed", "1"]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr_text(&out).contains("ceiling"));
}

#[test]
fn trbs_census_writes_the_flat_table() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("census.csv");
    let path_str = path.to_str().expect("utf-8 path");

    let out = run(&["trbs", "census", "--n", "3", "--out", path_str]);
    assert_eq!(exit_code(&out), 0);
    let summary = stderr_text(&out);
    assert!(summary.contains("census n=3:"));
    assert!(summary.contains("exhausted indices (no pattern works): 0, 7"));

    let csv = std::fs::read_to_string(&path).expect("csv written");
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 1 + 8 * 7);
    assert_eq!(lines[0], "n,index,pattern,verdict");
    assert_eq!(lines[1], "3,0,23,sat");
    assert!(lines[1..].iter().all(|l| l.starts_with("3,")));
}

#[test]
fn trbs_census_pattern_family_filters_rows() {
    let out = run(&["trbs", "census", "--n", "3", "--pattern-family", "23,4"]);
    assert_eq!(exit_code(&out), 0);
    let lines: Vec<String> = stdout_text(&out).lines().map(str::to_string).collect();
    assert_eq!(lines.len(), 1 + 8 * 2);
    assert_eq!(lines[1], "3,0,23,sat");
    assert_eq!(lines[2], "3,0,4,sat");
    assert!(lines[1..]
        .iter()
        .all(|l| l.contains(",23,") || l.contains(",4,")));

    let bad = run(&["trbs", "census", "--n", "3", "--pattern-family", "5"]);
    assert_eq!(exit_code(&bad), 1);
}

#[test]
fn trbs_roundtrip_outcomes_are_seed_deterministic() {
    // Seed 3 draws 11100011: every zero is interior, so verified mode
    // finds a certifying pattern for each and the readback matches.
    let pass = run(&["trbs", "roundtrip", "--n", "3", "--seed", "3"]);
    assert_eq!(exit_code(&pass), 0);
    let text = stdout_text(&pass);
    assert!(text.contains("bits:     11100011"));
    assert!(text.contains("round-trip: PASS"));
    assert!(text.contains("census n=3:"));

    // Seed 1 draws 01100100: index 0 is a zero, and no pattern makes the
    // all-zeros index unsatisfiable.
    let fail = run(&["trbs", "roundtrip", "--n", "3", "--seed", "1"]);
    assert_eq!(exit_code(&fail), 0);
    let text = stdout_text(&fail);
    assert!(text.contains("bits:     01100100"));
    assert!(text.contains("round-trip: FAIL (no pattern in the family certifies index 0)"));
}

#[test]
fn json_reports_are_deterministic_modulo_timings() {
    let mut seen = Vec::new();
    for _ in 0..2 {
        let out = run(&["trbs", "roundtrip", "--n", "3", "--seed", "3", "--json"]);
        assert_eq!(exit_code(&out), 0);
        let mut value = report(&out);
        assert_eq!(value["command"], "trbs roundtrip");
        assert_eq!(value["artifact_version"], 1);
        assert_eq!(value["seed"], 3);
        assert_eq!(value["outputs"]["outcome"], "pass");
        value["timings"] = Value::Null;
        seen.push(value);
    }
    assert_eq!(seen[0], seen[1]);
}

#[test]
fn json_solve_still_uses_verdict_exit_codes() {
    let out = run_stdin(&["solve", "--json"], "p cnf 2 2\n1 -2 0\n2 0\n");
    assert_eq!(exit_code(&out), 10);
    let value = report(&out);
    assert_eq!(value["outputs"]["verdict"], "sat");
    assert_eq!(value["outputs"]["model"], "11");
    assert_eq!(value["outputs"]["model_line"], "v 1 2 0");
}

#[test]
fn metrics_values_match_the_formulas() {
    let cases: &[(&[&str], &str)] = &[
        (&["metrics", "sat_content", "10"], "10240\n"),
        (&["metrics", "uniform_length", "3", "2"], "37\n"),
        (&["metrics", "paper_bit_length", "3", "12"], "80\n"),
        (&["metrics", "logarithmic_length", "4"], "195\n"),
        (&["metrics", "permutation_info", "2"], "5\n"),
        (&["metrics", "info_production", "1024"], "10240\n"),
        (&["metrics", "smallest_stable_bound15_n"], "257\n"),
    ];
    for (args, expected) in cases {
        let out = run(args);
        assert_eq!(exit_code(&out), 0, "{args:?}");
        assert_eq!(stdout_text(&out), *expected, "{args:?}");
    }
}

#[test]
fn metrics_crossover_prints_the_predecessor_check() {
    let out = run(&[
        "metrics",
        "crossover",
        "--alg-bits",
        "1000",
        "--rho",
        "64",
        "--poly",
        "0,0,0,1",
    ]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout_text(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("14"));
    assert_eq!(
        lines.next(),
        Some("content at 13 bits stays within the accessible budget: yes")
    );
}

#[test]
fn metrics_reject_out_of_domain_arguments() {
    for args in [
        &["metrics", "uniform_length", "2", "2"][..],
        &["metrics", "lambert_w", "1.0"][..],
        &["metrics", "n_lower_bound", "21"][..],
        &["metrics", "crossover", "--alg-bits", "1", "--rho", "1", "--poly", "1,0"][..],
    ] {
        let out = run(args);
        assert_eq!(exit_code(&out), 1, "{args:?}");
    }
}

#[test]
fn help_exits_cleanly() {
    let out = run(&["--help"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout_text(&out);
    for command in ["solve", "enumerate", "table", "trbs", "metrics"] {
        assert!(text.contains(command), "{command} missing from help");
    }

    let unknown = run(&["frobnicate"]);
    assert_eq!(exit_code(&unknown), 1);
}
