//! End-to-end checks of the `afsim` binary: exit codes, machine files on
//! disk, and the TSV sweep report.

use std::path::Path;
use std::process::{Command, Output};

fn afsim(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_afsim"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("failed to launch afsim")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn zoo_validate_run_and_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path();

    let out = afsim(&["zoo", "end", "--out", "end.afca"], path);
    assert!(out.status.success(), "{out:?}");
    assert!(path.join("end.afca").exists());

    let out = afsim(&["validate", "end.afca"], path);
    assert!(out.status.success());
    assert!(stdout(&out).contains("well-formed"));

    let out = afsim(&["run", "end.afca", "--word", "21"], path);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "accept 1/1");

    let out = afsim(&["run", "end.afca", "--word", "12"], path);
    assert_eq!(stdout(&out).trim(), "accept 0/1");

    let out = afsim(
        &[
            "sweep", "end.afca", "--oracle", "end", "--alphabet", "012", "--max-len", "5",
            "--out", "report.tsv",
        ],
        path,
    );
    assert!(out.status.success(), "{out:?}");
    let report = std::fs::read_to_string(path.join("report.tsv")).unwrap();
    assert!(report.starts_with("word\toracle\tp_accept\tp_reject\tp_neutral\tverdict\n"));
    assert!(report.contains("# oracle end words 364 pass"));
    assert!(report.contains("fail 0 "));
}

#[test]
fn restart_run_prints_expectations() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path();

    let out = afsim(
        &["zoo", "pal-npal-restart", "--k", "1", "--out", "r.afa"],
        path,
    );
    assert!(out.status.success(), "{out:?}");

    let out = afsim(&["run", "r.afa", "--word", "1012"], path);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("overall_accept 1/1"));
    assert!(text.contains("expected_rounds 5/4"));
    assert!(text.contains("expected_steps 15/2"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path();

    // usage error: parameterized machine without --k
    let out = afsim(&["zoo", "pal-npal", "--out", "x.afa"], path);
    assert_eq!(out.status.code(), Some(2));

    // usage error: unknown zoo machine
    let out = afsim(&["zoo", "nonesuch", "--out", "x.afa"], path);
    assert_eq!(out.status.code(), Some(2));

    // validation failure: broken column sum
    std::fs::write(
        path.join("bad.afa"),
        "type afa\nstates a b\nalphabet 0\ninitial a\naccepting a\n\
         matrix ^\n1 0\n0 1\nmatrix $\n1 0\n0 1\nmatrix 0\n1 1\n0 1\n",
    )
    .unwrap();
    let out = afsim(&["validate", "bad.afa"], path);
    assert_eq!(out.status.code(), Some(1));

    // sweep failure: END machine against the wrong oracle
    afsim(&["zoo", "end", "--out", "end.afca"], path);
    let out = afsim(
        &[
            "sweep", "end.afca", "--oracle", "pal-npal", "--alphabet", "012", "--max-len", "4",
            "--out", "bad.tsv",
        ],
        path,
    );
    assert_eq!(out.status.code(), Some(1));
}
