//! Helpers for driving the compiled binary in integration tests.
#![allow(dead_code)] // each test binary uses a different subset

use std::process::{Command, Output};

pub fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_evidence"))
}

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("the binary should run")
}

pub fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = bin();
    cmd.args(args);
    for (key, value) in env {
        cmd.env(key, value);
    }
    cmd.output().expect("the binary should run")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout should be UTF-8")
}

pub fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr should be UTF-8")
}

pub fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("the process should exit normally")
}

/// Asserts the error contract: the given exit code, empty stdout, and exactly
/// one machine-readable diagnostic line on stderr.
pub fn assert_error(out: &Output, code: i32, needle: &str) {
    assert_eq!(exit_code(out), code, "stderr: {}", stderr(out));
    assert!(
        out.stdout.is_empty(),
        "error paths must not write stdout, got: {}",
        stdout(out)
    );
    let text = stderr(out);
    assert_eq!(
        text.trim_end().lines().count(),
        1,
        "diagnostics must be a single line, got: {text}"
    );
    assert!(
        text.contains(needle),
        "expected {needle:?} in diagnostic: {text}"
    );
}
