//! End-to-end CLI tests: golden machine-readable output, exit codes,
//! stdin handling, and determinism.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn veclog(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_veclog"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn golden(name: &str) -> String {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("golden file {path}"))
}

#[test]
fn golden_documents() {
    let cases: [(&[&str], &str, i32); 10] = [
        (&["--json", "parse", "p -> q"], "parse_impl.json", 0),
        (&["--json", "parse", "p -> "], "parse_error.json", 1),
        (&["--json", "table", "p & q"], "table_and.json", 0),
        (&["--json", "eval", "p -> q", "p=1", "q=0"], "eval_impl.json", 0),
        (&["--json", "diff", "p | !p", "p"], "diff_em.json", 0),
        (&["--json", "integrate", "p | !p", "t"], "integrate_general_em.json", 0),
        (
            &["--json", "integrate", "p -> !q", "t", "--particular", "--max-results", "2"],
            "integrate_particular.json",
            0,
        ),
        (&["--json", "hierarchy"], "hierarchy.json", 0),
        (
            &["--json", "sensitivity", "(p | q) -> (!q & p)"],
            "sensitivity_worked.json",
            0,
        ),
        (
            &["--json", "tautology", "(p & (p -> q)) -> q"],
            "tautology_mp.json",
            0,
        ),
    ];
    for (args, file, code) in cases {
        let output = veclog(args);
        assert_eq!(output.status.code(), Some(code), "exit code for {args:?}");
        assert_eq!(stdout(&output), golden(file), "stdout for {args:?}");
    }
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["--json", "integrate", "p -> q", "t", "--particular"];
    let first = veclog(&args);
    let second = veclog(&args);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.status.code(), second.status.code());
}

#[test]
fn exit_codes_follow_the_contract() {
    // ok
    assert_eq!(veclog(&["tautology", "p -> p"]).status.code(), Some(0));
    // usage: syntax error, bad assignment, conflicting flags
    assert_eq!(veclog(&["parse", "(p"]).status.code(), Some(1));
    assert_eq!(veclog(&["eval", "p", "p=policy"]).status.code(), Some(1));
    assert_eq!(
        veclog(&["integrate", "p", "t", "--general", "2", "--particular"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        veclog(&["diff", "p & q", "p", "--cross", "q", "--order", "2"])
            .status
            .code(),
        Some(1)
    );
    // evaluation failures: missing variable, tau clash, variable cap
    assert_eq!(veclog(&["eval", "p & q", "p=1"]).status.code(), Some(2));
    assert_eq!(veclog(&["integrate", "p & q", "q"]).status.code(), Some(2));
    let wide = (1..=21).map(|i| format!("x{i}")).collect::<Vec<_>>().join(" & ");
    assert_eq!(veclog(&["table", &wide]).status.code(), Some(2));
    assert_eq!(
        veclog(&["--max-vars", "4", "table", "a & b & c & d & e"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn formula_dash_reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_veclog"))
        .args(["parse", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .expect("stdin handle")
        .write_all(b"p !& (q | r)\n")
        .expect("write stdin");
    let output = child.wait_with_output().expect("wait");
    assert_eq!(output.status.code(), Some(0));
    let text = String::from_utf8(output.stdout).unwrap();
    assert!(text.contains("p !& (q | r)"));
    assert!(text.contains("S p D q r"));
}

#[test]
fn human_output_spot_checks() {
    let table = stdout(&veclog(&["table", "p | !p"]));
    assert!(table.contains("tautology: yes"));

    let eval = stdout(&veclog(&["eval", "p ^ q", "p=0.5", "q=0.5"]));
    assert!(eval.contains("0.500000000000"));

    let diff = stdout(&veclog(&["diff", "p -> q", "p"]));
    assert!(diff.contains("!q"));

    let sens = stdout(&veclog(&["sensitivity", "(p | q) -> (!q & p)"]));
    assert!(sens.contains("collapse: !q"));

    let hier = stdout(&veclog(&["hierarchy"]));
    assert!(hier.contains("all hold: yes"));
}

#[test]
fn numeric_diff_spot_checks() {
    // successive-derivative weight map at q = 0.9: first 0.18, second 0.2952
    let first = stdout(&veclog(&[
        "--json",
        "diff",
        "(p | q) -> (!q & p)",
        "p",
        "q=0.9",
    ]));
    assert!(first.contains("\"weight\": \"0.180000000000\""));
    let second = stdout(&veclog(&[
        "--json",
        "diff",
        "(p | q) -> (!q & p)",
        "p",
        "--order",
        "2",
        "q=0.9",
    ]));
    assert!(second.contains("\"weight\": \"0.295200000000\""));

    let cross = stdout(&veclog(&["--json", "diff", "p & q", "p", "--cross", "q"]));
    assert!(cross.contains("\"infix\": \"1\""));
}
