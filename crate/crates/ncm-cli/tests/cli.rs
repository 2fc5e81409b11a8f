//! End-to-end checks of the `ncm` binary: the documented example
//! invocations, exit-status conventions, and byte-identical reruns.

use std::process::{Command, Output};

fn ncm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn dims_example() {
    let out = ncm(&["dims", "--magma", "N:2", "--upto", "6"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for d in ["1", "8", "48", "352", "2880", "25216"] {
        assert!(text.contains(d), "missing dimension {d} in {text}");
    }
    assert!(text.contains("PASS"));
}

#[test]
fn confluence_example() {
    let out = ncm(&["confluence", "--magma", "N:2", "--arity", "4"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("PASS"));
}

#[test]
fn construct_example() {
    let out = ncm(&["construct", "MOTZKIN", "--nmax", "7"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("[1, 1, 2, 4, 9, 21, 51]"));
    assert!(text.contains("PASS"));
}

#[test]
fn reruns_are_byte_identical() {
    let args: &[&[&str]] = &[
        &["koszul", "--magma", "N:2", "--format", "json"],
        &["enumerate", "--magma", "N:2", "--arity", "3", "--format", "json"],
        &["series", "--m", "2", "--order", "6", "--format", "json"],
        &["algebra-check", "--carrier", "constant", "--samples", "25", "--format", "json"],
    ];
    for a in args {
        let first = ncm(a);
        let second = ncm(a);
        assert!(first.status.success(), "command {a:?} failed");
        assert_eq!(first.stdout, second.stdout, "nondeterministic output for {a:?}");
    }
}

#[test]
fn invalid_config_is_nonzero() {
    assert!(!ncm(&["dims", "--upto", "3"]).status.success());
    assert!(!ncm(&["construct", "UNKNOWN"]).status.success());
    assert!(!ncm(&["enumerate", "--magma", "bogus:spec", "--arity", "2"]).status.success());
}

#[test]
fn compose_and_normal_form_roundtrip() {
    let p = r#"{"arity":2,"arcs":[[1,2,"1"]],"magma":"N:2"}"#;
    let q = r#"{"arity":3,"arcs":[],"magma":"N:2"}"#;
    let out = ncm(&[
        "compose", "--magma", "N:2", "--p", p, "--pos", "2", "--q", q, "--format", "json",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains(r#""arity":4"#));

    let tree = r#"{"generator":["0","1","0"],
                   "left":{"generator":["1","0","0"],"left":null,"right":null},
                   "right":null}"#;
    let out = ncm(&["normal-form", "--magma", "N:2", "--tree", tree, "--format", "json"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains(r#""evaluation_preserved":true"#));
}
