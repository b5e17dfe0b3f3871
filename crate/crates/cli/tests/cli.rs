use std::process::{Command, Output};

fn turanham(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_turanham"))
        .args(args)
        .output()
        .expect("failed to start turanham")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn compute_prints_exact_values() {
    let out = turanham(&["compute", "-d", "2", "-n", "20", "--column", "labelled"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "113184512236563589997407\n");

    let out = turanham(&["compute", "-d", "5", "-n", "8", "--column", "dihedral"]);
    assert_eq!(stdout(&out), "77938101941693076258854\n");
}

#[test]
fn argument_errors_exit_with_two() {
    let out = turanham(&["compute", "-d", "1", "-n", "3", "--column", "labelled"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    assert_eq!(turanham(&["compute", "-d", "2", "-n", "0", "--column", "linear"]).status.code(), Some(2));
    assert_eq!(turanham(&["table", "-d", "2", "--n-max", "3", "--format", "bfile"]).status.code(), Some(2));
    assert_eq!(turanham(&["verify", "--scope", "nothing"]).status.code(), Some(2));
}

#[test]
fn table_formats() {
    let out = turanham(&["table", "-d", "2", "--n-max", "6", "--format", "bfile", "--column", "labelled"]);
    assert_eq!(stdout(&out), "1 0\n2 1\n3 4\n4 31\n5 293\n6 3326\n");

    let out = turanham(&["table", "-d", "4", "--n-max", "0", "--format", "csv"]);
    assert_eq!(stdout(&out), "n,linear,labelled,rotations,all_symmetries\n");

    let out = turanham(&["table", "-d", "3", "--n-max", "13", "--format", "csv"]);
    let text = stdout(&out);
    let fixture = include_str!("../../core/fixtures/loopless_d3.csv");
    assert_eq!(text.lines().count(), 14);
    assert_eq!(text.lines().collect::<Vec<_>>(), fixture.lines().collect::<Vec<_>>());

    let out = turanham(&["table", "-d", "2", "--n-max", "2", "--format", "json"]);
    assert!(stdout(&out).contains("\"all_symmetries\": \"1\""));
}

#[test]
fn output_is_deterministic() {
    let args = ["table", "-d", "3", "--n-max", "8", "--format", "markdown"];
    assert_eq!(turanham(&args).stdout, turanham(&args).stdout);
}

#[test]
fn unwritable_output_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("t.csv");
    let out = turanham(&["table", "-d", "2", "--n-max", "3", "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_scopes() {
    let out = turanham(&["verify", "--scope", "fixtures"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("58 records checked, 0 mismatches"));

    let out = turanham(&["verify", "--scope", "oracle", "--max-points", "10"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));

    let out = turanham(&["verify", "--scope", "fixtures", "--beyond", "1"]);
    assert!(stdout(&out).contains("beyond-fixture d=6 n=8"));
}

#[test]
fn verify_fails_with_errata_enabled() {
    let out = turanham(&["verify", "--scope", "identities", "--erratum", "printed-weights"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("first at d=2 n=2"));

    let out = turanham(&["verify", "--scope", "fixtures", "--erratum", "d3-sign"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("expected 22, got 26"));
}

#[test]
fn cache_save_and_load() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("memo.cache");
    let p = path.to_str().unwrap();
    assert_eq!(turanham(&["cache", "save", p, "-d", "2"]).status.code(), Some(0));
    assert_eq!(turanham(&["cache", "load", p]).status.code(), Some(0));

    let fresh = turanham(&["table", "-d", "2", "--n-max", "20"]);
    let cached = turanham(&["--cache", p, "table", "-d", "2", "--n-max", "20"]);
    assert_eq!(fresh.stdout, cached.stdout);

    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::write(&path, &text[..text.len() / 2]).unwrap();
    let out = turanham(&["cache", "load", p]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("checksum"));

    std::fs::write(&path, text.replacen("turanham-cache/1", "turanham-cache/9", 1)).unwrap();
    let out = turanham(&["cache", "load", p]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unsupported cache format"));
}
