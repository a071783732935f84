// SPDX-License-Identifier: Apache-2.0

use std::io::Write;
use std::process::{Command, Stdio};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("lmcost").chain(args.iter().copied());
    let code = lmcost_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

#[test]
fn cost_examples() {
    let out = ok(&["cost", "--pair", "bz,pgi", "--n", "5", "--class", "weighted"]);
    assert!(out.contains("cost 1/2\n"));
    assert!(out.contains("witness [2;2,1,1,1,1]\n"));
    let out = ok(&["cost", "--collection", "jo,dp,sdp", "--n", "6"]);
    assert!(out.contains("cost 3/5\n"), "{out}");
    let out = ok(&[
        "cost",
        "--pair",
        "bz,pgi",
        "--n",
        "6",
        "--class",
        "weighted,constant-sum",
    ]);
    assert!(out.contains("cost 1/5\n"), "{out}");
    let json: serde_json::Value =
        serde_json::from_str(ok(&["--format", "json", "cost", "--pair", "bz,s", "--n", "4"]).trim()).unwrap();
    assert_eq!(json["cost"], "1/3");
    assert_eq!(json["games"], 25);
}

#[test]
fn indices_print_six_vectors() {
    let out = ok(&["indices", "[3;2,1,1,1]"]);
    assert_eq!(out.lines().count(), 7);
    assert!(out.contains("bz   6 2 2 2\n"));
    let csv = ok(&["--format", "csv", "indices", "[2;1,1]"]);
    assert_eq!(csv.lines().next(), Some("index,player,value"));
    assert_eq!(csv.lines().count(), 1 + 6 * 2);
    let json = ok(&[
        "--format",
        "json",
        "indices",
        "{\"n\":3,\"minimal_winning\":[[1],[2,3]]}",
    ]);
    assert_eq!(json.lines().count(), 6);
    for line in json.lines() {
        serde_json::from_str::<serde_json::Value>(line).unwrap();
    }
    let decimals = ok(&["--decimals", "2", "indices", "[3;2,1,1,1]"]);
    assert!(decimals.contains("9/2 (4.50)"));
    let normalized = ok(&["indices", "[3;2,1,1,1]", "--normalized"]);
    assert!(normalized.contains("bz*  1/2 1/6 1/6 1/6\n"), "{normalized}");
}

#[test]
fn incomplete_games_leave_shift_indices_undefined() {
    let out = ok(&["indices", "{\"n\":4,\"minimal_winning\":[[1,2],[3,4]]}"]);
    assert!(out.contains("s    undefined"));
    assert!(out.contains("sdp  undefined"));
}

#[test]
fn polyhedron_example() {
    let out = ok(&["polyhedron", "--collection", "bz,pgi,s", "--n", "4"]);
    assert!(out.contains("vertices 3\n"));
    assert!(out.contains("(1/3, 2/3, 0)"));
    let lazy = ok(&["polyhedron", "--collection", "bz,pgi,s", "--n", "5", "--method", "lazy"]);
    assert!(lazy.contains("(1/2, 1/2, 0)"), "{lazy}");
    let csv = ok(&["--format", "csv", "polyhedron", "--n", "4"]);
    assert_eq!(csv.lines().next(), Some("alpha2,alpha3,alpha2_decimal,alpha3_decimal"));
}

#[test]
fn family_and_catalog() {
    let out = ok(&["family", "bz-shift", "--k", "1", "--m", "1"]);
    assert!(out.contains("[14;9,8,5,2,2,2,2]"));
    assert!(!out.contains("FAIL"));
    let all = ok(&["family", "--verify-all"]);
    assert!(all.ends_with("31 entries, 0 failed\n"), "{all}");
    assert!(all.contains("flagged"));
}

#[test]
fn enumerate_flags_and_aliases() {
    assert!(ok(&["enumerate", "--n", "6", "--class", "complete"]).contains("count 1171\n"));
    assert!(ok(&["enumerate", "--n", "6", "--count-only"]).contains("count 1111\n"));
    let listed = ok(&["enumerate", "--n", "3", "--emit"]);
    assert_eq!(listed.lines().filter(|l| l.starts_with('[')).count(), 8);
    assert_eq!(
        ok(&["enumerate", "--table-uniform", "5"]),
        ok(&["enumerate", "--uniform-table", "5"])
    );
}

#[test]
fn emit_ilp_writes_the_model() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.lp");
    let p = path.to_str().unwrap();
    let out = ok(&[
        "emit-ilp",
        "--n",
        "2",
        "--collection",
        "bz,pgi",
        "--alpha",
        "1/2,1/2",
        "--pair",
        "1",
        "-o",
        p,
    ]);
    assert!(out.contains("76 constraints, 32 variables"));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text, include_str!("../../core/tests/fixtures/n2_bz_pgi.lp"));
    let (code, _, err) = run(&[
        "emit-ilp",
        "--n",
        "2",
        "--collection",
        "bz,pgi",
        "--alpha",
        "1/2,1/2",
        "--pair",
        "1",
        "--big-m",
        "3",
        "-o",
        p,
    ]);
    assert_eq!(code, 0);
    assert!(err.contains("warning"), "{err}");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["indices", "[3;1,1]"]).0, 1);
    assert_eq!(run(&["indices", "[3;1,1"]).0, 1);
    assert_eq!(run(&["cost", "--n", "4"]).0, 2);
    assert_eq!(run(&["cost", "--pair", "bz,pgi", "--n", "9"]).0, 2);
    assert_eq!(
        run(&["cost", "--pair", "bz,pgi", "--n", "4", "--class", "minimal"]).0,
        2
    );
    assert_eq!(
        run(&[
            "check-lm",
            "[2;1,1]",
            "--alpha",
            "1/2,1/3,1/6",
            "--collection",
            "bz,pgi"
        ])
        .0,
        2
    );
    assert_eq!(
        run(&["check-lm", "[2;1,1]", "--alpha", "1/2,1/3", "--collection", "bz,pgi"]).0,
        2
    );
    assert_eq!(run(&["no-such-command"]).0, 2);
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("Usage"));
}

#[test]
fn output_is_independent_of_worker_count() {
    let args = ["cost", "--collection", "bz,pgi,s", "--n", "6"];
    let base = ok(&args);
    for jobs in ["1", "2", "4"] {
        let mut with_jobs = vec!["--jobs", jobs];
        with_jobs.extend(args);
        assert_eq!(ok(&with_jobs), base);
    }
    let list = ["enumerate", "--n", "5", "--class", "complete", "--list"];
    assert_eq!(
        ok(&["--jobs", "1"].iter().chain(&list).copied().collect::<Vec<_>>()),
        ok(&list)
    );
}

#[test]
fn binary_reads_stdin_and_honours_the_environment() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_lmcost"))
        .args(["indices", "-"])
        .env("LMCOST_JOBS", "1")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"[2;1,1,1]\n").unwrap();
    let output = child.wait_with_output().unwrap();
    assert!(output.status.success());
    assert!(String::from_utf8(output.stdout).unwrap().starts_with("players 3\n"));
    let bad = Command::new(env!("CARGO_BIN_EXE_lmcost"))
        .args(["indices", "[1;0,0]"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
}
