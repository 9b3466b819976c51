//! End-to-end tests of the installed binary: output determinism, exit codes,
//! and the file-based input paths.

use std::path::Path;
use std::process::{Command, Output};

use branchlaw::chartab::{dixon_table, save_table};
use branchlaw::matgroup::builtin;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_branchlaw"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

#[test]
fn info_reports_group_facts() {
    let out = run(&["info", "--group", "typeII"]);
    assert!(out.status.success(), "{}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("order: 60"));
    assert!(text.contains("classes: 5"));
    assert!(text.contains("class sizes: 1 15 20 12 12"));
    assert!(text.contains("exponent: 30"));
    assert!(text.contains("degrees: 1 3 3 4 5"));

    let out = run(&["info", "--group", "trivial"]);
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("order: 1"));

    let out = run(&["info", "--group", "cyclic4"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("order: 4"));
    assert!(text.contains("exponent: 4"));
}

#[test]
fn series_output_is_deterministic() {
    let args = ["series", "--group", "cyclic4", "--check-degree", "3"];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout, "repeated runs differ");

    let one = run(&[
        "series",
        "--group",
        "cyclic4",
        "--check-degree",
        "3",
        "--threads",
        "1",
    ]);
    let two = run(&[
        "series",
        "--group",
        "cyclic4",
        "--check-degree",
        "3",
        "--threads",
        "2",
    ]);
    assert!(one.status.success() && two.status.success());
    assert_eq!(one.stdout, two.stdout, "thread counts change the bytes");
    assert_eq!(first.stdout, one.stdout);
}

#[test]
fn json_output_parses() {
    let out = run(&[
        "series",
        "--group",
        "trivial",
        "--check-degree",
        "4",
        "--format",
        "json-like",
        "--specialize",
        "u=0,w=0",
    ]);
    assert!(out.status.success(), "{}", stderr_of(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("valid json");
    assert_eq!(doc["group"]["order"], 1);
    assert_eq!(doc["command"], "series");
    assert_eq!(doc["verification"]["all_passed"], true);
    assert_eq!(
        doc["series"]["coordinates"].as_array().expect("array").len(),
        1
    );
    assert_eq!(
        doc["specializations"][0]["assignments"].as_str().unwrap(),
        "u=0, w=0"
    );
}

#[test]
fn molien_prints_verdict() {
    let out = run(&["molien", "--group", "trivial"]);
    assert!(out.status.success(), "{}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("matches series specialization: yes"));
    // dimensions of the symmetric powers of a 4-dimensional space
    assert!(text.contains("series: 1 4 10 20 35 56 84 120 165"));
}

#[test]
fn verify_subcommand_passes() {
    let out = run(&["verify", "--group", "cyclic4", "--check-degree", "3"]);
    assert!(out.status.success(), "{}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("result: all checks passed"));
    assert!(text.contains("oracle-agreement: pass"));
}

#[test]
fn out_flag_writes_file_instead_of_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.txt");
    let out = run(&[
        "series",
        "--group",
        "trivial",
        "--check-degree",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let content = std::fs::read_to_string(&path).unwrap();
    assert!(content.contains("[series]"));
}

#[test]
fn generator_file_input_works() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c4.grp");
    std::fs::write(
        &path,
        "# cyclic of order 4\n8\nE(4),0,0,0; 0,-E(4),0,0; 0,0,E(4),0; 0,0,0,-E(4)\n",
    )
    .unwrap();
    let out = run(&["info", "--group", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("source: c4"));
    assert!(text.contains("order: 4"));
}

fn write_table(dir: &Path, name: &str) -> std::path::PathBuf {
    let g = builtin(name).unwrap();
    let t = dixon_table(&g).unwrap();
    let path = dir.join(format!("{name}.tbl"));
    std::fs::write(&path, save_table(&t)).unwrap();
    path
}

#[test]
fn table_file_input_works() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_table(dir.path(), "cyclic4");
    let out = run(&[
        "series",
        "--table",
        path.to_str().unwrap(),
        "--check-degree",
        "3",
    ]);
    assert!(out.status.success(), "{}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("provenance: table"));
    assert!(text.contains("result: all checks passed"));
}

#[test]
fn corrupted_table_fails_with_orthogonality_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_table(dir.path(), "cyclic4");
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("1 1 -1 -1"), "expected row missing:\n{text}");
    std::fs::write(&path, text.replace("1 1 -1 -1", "1 1 -1 1")).unwrap();

    let out = run(&["verify", "--table", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4), "{}", stderr_of(&out));
    let err = stderr_of(&out);
    assert!(err.contains("character table error"), "{err}");
    assert!(err.contains("orthogonal"), "{err}");
}

#[test]
fn exit_codes_distinguish_failure_classes() {
    // missing input file: io error
    let out = run(&["info", "--group", "/nonexistent/nowhere.grp"]);
    assert_eq!(out.status.code(), Some(12));

    // unreadable generator file: parse error
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.grp");
    std::fs::write(&path, "not a number\n").unwrap();
    let out = run(&["info", "--group", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "{}", stderr_of(&out));

    // group/table flags are mutually exclusive (usage error from the parser)
    let out = run(&["info", "--group", "trivial", "--table", "x.tbl"]);
    assert_eq!(out.status.code(), Some(2));

    // one of them is required
    let out = run(&["info"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("exactly one of --group and --table"));

    // malformed specialization
    let out = run(&[
        "series",
        "--group",
        "trivial",
        "--check-degree",
        "0",
        "--specialize",
        "q=1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}
