//! End-to-end tests of the `svfn` binary: subcommands, flags, output
//! formats, determinism, and the exit-code contract
//! (0 ok, 1 failed property, 2 unusable input, 3 contract violation).

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_svfn"))
}

fn fixture(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name]
        .iter()
        .collect();
    path.to_str().unwrap().to_string()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

#[test]
fn eval_single_class_csv() {
    let out = run(&[
        "eval",
        "--input",
        &fixture("eval_worked.json"),
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert_eq!(stdout(&out), "g,s_g\n\"(1,1)\",3\n");
}

#[test]
fn eval_full_table_lists_every_class_under_the_unit() {
    let out = run(&[
        "eval",
        "--input",
        &fixture("eval_table.json"),
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1 + 3 * 4, "one row per class of M2 (+) M3");
    assert_eq!(lines[1], "\"(0,0)\",5");
    assert!(lines.contains(&"\"(1,1)\",3"));
    assert!(lines.contains(&"\"(2,0)\",4"));
    assert!(lines.contains(&"\"(2,3)\",0"));
}

#[test]
fn eval_table_format_renders_aligned_columns() {
    let out = run(&["eval", "--input", &fixture("eval_worked.json")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("g      s_g\n"));
    assert!(text.contains("(1,1)  3"));
}

#[test]
fn eval_wrong_group_variant_exits_3() {
    let out = run(&["eval", "--input", &fixture("eval_bad_variant.json")]);
    assert_eq!(out.status.code(), Some(3), "stderr: {}", stderr(&out));
    assert!(stderr(&out).contains("error"));
}

#[test]
fn eval_missing_file_exits_2() {
    let out = run(&["eval", "--input", "/nonexistent/nope.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_document_exits_2() {
    let out = run(&["eval", "--input", &fixture("malformed_unknown_field.json")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn battery_runs_and_is_deterministic() {
    let args = ["battery", "--trials", "15", "--seed", "9", "--format", "csv"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0), "stderr: {}", stderr(&a));
    assert_eq!(stdout(&a), stdout(&b), "same seed, same bytes");
    let text = stdout(&a);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "id,name,trials,failures,worst_slack");
    assert_eq!(lines.len(), 15, "header plus 14 checks");
    for line in &lines[1..] {
        assert!(line.contains(",15,0,"), "no failures in {line}");
    }
    let c = run(&["battery", "--trials", "15", "--seed", "10", "--format", "csv"]);
    assert_ne!(stdout(&a), stdout(&c), "different seed, different slacks");
}

#[test]
fn battery_reads_sizes_seed_and_trials_from_the_document() {
    let out = run(&[
        "battery",
        "--input",
        &fixture("battery_sizes.json"),
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    for line in text.lines().skip(1) {
        assert!(line.contains(",12,0,"), "document trials used in {line}");
    }
    // Explicit flags beat the document.
    let out = run(&[
        "battery",
        "--input",
        &fixture("battery_sizes.json"),
        "--trials",
        "7",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    for line in stdout(&out).lines().skip(1) {
        assert!(line.contains(",7,0,"), "flag trials used in {line}");
    }
}

#[test]
fn battery_zero_trials_exits_2() {
    let out = run(&["battery", "--trials", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn realize_default_ramp_holds_envelopes() {
    let out = run(&["realize", "--steps", "5", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,increment,distance");
    assert_eq!(lines.len(), 7, "header plus levels 0..=5");
    assert!(lines[1].starts_with("0,,"));
}

#[test]
fn realize_step_target_from_document() {
    let out = run(&[
        "realize",
        "--input",
        &fixture("realize_two_jump_step.json"),
        "--steps",
        "3",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    // A step target is reproduced exactly once its jumps are snapped.
    let text = stdout(&out);
    let last = text.lines().last().unwrap();
    assert_eq!(last, "3,0,0");
}

#[test]
fn realize_unnormalized_target_exits_3() {
    let out = run(&[
        "realize",
        "--input",
        &fixture("realize_bad_normalization.json"),
    ]);
    assert_eq!(out.status.code(), Some(3), "stderr: {}", stderr(&out));
}

#[test]
fn counterexample_is_byte_stable_across_runs() {
    let a = run(&["counterexample", "--format", "csv"]);
    let b = run(&["counterexample", "--format", "csv"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    let text = stdout(&a);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "label,class,s");
    assert_eq!(lines[1], "projection,(1; 0),");
    assert_eq!(lines[2], "g_1,(2; 1),0");
    assert_eq!(lines[101], "g_100,(101/100; 1),0");
    assert_eq!(lines[102], "limit,(1; 1),1");
    assert_eq!(lines[103], "control,(1; 0),0");
}

#[test]
fn output_flag_writes_the_file_instead_of_stdout() {
    let path = std::env::temp_dir().join(format!("svfn_cli_test_{}.csv", std::process::id()));
    let path_str = path.to_str().unwrap();
    let out = run(&[
        "eval",
        "--input",
        &fixture("eval_worked.json"),
        "--format",
        "csv",
        "--output",
        path_str,
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).is_empty(), "nothing on stdout with --output");
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, "g,s_g\n\"(1,1)\",3\n");
    let _ = std::fs::remove_file(&path);
}

#[test]
fn usage_errors_from_the_parser_exit_2() {
    let out = run(&["no-such-subcommand"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["eval"]); // missing required --input
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["eval", "--input", &fixture("eval_worked.json"), "--format", "yaml"]);
    assert_eq!(out.status.code(), Some(2));
}
