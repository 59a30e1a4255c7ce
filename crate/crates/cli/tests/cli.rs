mod common;

use std::process::Command;

use common::{check_golden, run_cli, tests_dir};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_celebrity"))
}

fn data(path: &str) -> String {
    tests_dir().join("data").join(path).display().to_string()
}

fn temp_file(name: &str, contents: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("celebrity-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn golden_transcripts() {
    let failures: Vec<String> = common::all_cases()
        .into_iter()
        .filter_map(|case| check_golden(case).err())
        .collect();
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn verify_exit_codes() {
    let status = bin()
        .args(["verify", "--instance", &data("star4/instance.txt")])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0));

    let faulty = bin()
        .args(["verify", "--instance", &data("star4/instance.txt"), "--inject-fault"])
        .output()
        .unwrap();
    assert_eq!(faulty.status.code(), Some(1));
    let csv = String::from_utf8(faulty.stdout).unwrap();
    assert!(csv.starts_with("check_id,status,witness\n"));
    assert!(csv.contains("C19,Fail,"));
}

#[test]
fn enumerate_guards_instance_size() {
    let seven = temp_file("n7.txt", "n = 7\nalpha = 1\nbeta = 2\nweights = 1 1 1 1 1 1 1\n");
    let out = bin()
        .args(["enumerate", "--instance", seven.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("instance too large"), "{err}");

    let six = temp_file("n6.txt", "n = 6\nalpha = 1\nbeta = 2\nweights = 1 1 1 1 1 1\n");
    let (_, err, code) = run_cli(&["enumerate".into(), "--instance".into(), six.display().to_string()]);
    assert_eq!(code, 2);
    assert!(err.contains("limit of 5"), "{err}");
}

#[test]
fn usage_and_parse_errors_exit_two() {
    let (_, err, code) = run_cli(&["frobnicate".into()]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());

    let bad = temp_file("bad.txt", "n = 3\nalpha = 0\nbeta = 2\nweights = 1 1 1\n");
    let (_, err, code) = run_cli(&["classify".into(), "--instance".into(), bad.display().to_string()]);
    assert_eq!(code, 2);
    assert!(err.contains("alpha must be > 0"), "{err}");

    let beta = temp_file("beta.txt", "n = 3\nalpha = 1\nbeta = 3\nweights = 1 1 1\n");
    let (_, err, code) = run_cli(&["classify".into(), "--instance".into(), beta.display().to_string()]);
    assert_eq!(code, 2);
    assert!(err.contains("beta"), "{err}");

    let unknown = temp_file("unknown.txt", "n = 3\nalpha = 1\nbeta = 2\nweights = 1 1 1\ncolour = red\n");
    let (_, err, code) = run_cli(&["classify".into(), "--instance".into(), unknown.display().to_string()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 5"), "{err}");

    let (_, _, code) = run_cli(&["classify".into(), "--instance".into(), "/nonexistent/file".into()]);
    assert_eq!(code, 2);

    let (_, _, code) = run_cli(&[
        "best-response".into(),
        "--instance".into(),
        data("star4/instance.txt"),
        "--profile".into(),
        data("star4/profile.txt"),
        "--player".into(),
        "9".into(),
    ]);
    assert_eq!(code, 2);
}

#[test]
fn help_exits_zero() {
    let (out, _, code) = run_cli(&["--help".into()]);
    assert_eq!(code, 0);
    assert!(out.contains("verify"));
}

#[test]
fn output_files_match_stdout_csv() {
    let csv_path = std::env::temp_dir().join(format!("celebrity-cli-{}-poa.csv", std::process::id()));
    let inst = data("unique3/instance.txt");
    let (stdout_csv, _, code) = run_cli(&["poa".into(), "--instance".into(), inst.clone()]);
    assert_eq!(code, 0);
    let (summary, _, code) = run_cli(&[
        "poa".into(),
        "--instance".into(),
        inst,
        "-o".into(),
        csv_path.display().to_string(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(std::fs::read_to_string(&csv_path).unwrap(), stdout_csv);
    assert_eq!(stdout_csv, "opt,best_ne,worst_ne,pos,poa\n10/1,12/1,12/1,6/5,6/5\n");
    assert_eq!(summary, "pos 6/5\npoa 6/5\n");
}

#[test]
fn jobs_flag_does_not_change_output() {
    let inst = data("mixed5/instance.txt");
    let one = run_cli(&["--jobs".into(), "1".into(), "enumerate".into(), "--instance".into(), inst.clone()]);
    let two = run_cli(&["enumerate".into(), "--instance".into(), inst.clone(), "--jobs".into(), "2".into()]);
    assert_eq!(one, two);
    assert_eq!(one.2, 0);
    let (_, _, code) = run_cli(&["--jobs".into(), "0".into(), "classify".into(), "--instance".into(), inst]);
    assert_eq!(code, 2);
}

#[test]
fn gen_writes_parseable_instance() {
    let path = std::env::temp_dir().join(format!("celebrity-cli-{}-gen.txt", std::process::id()));
    let args: Vec<String> = "gen --n 4 --alpha 1 --beta 3 --wmin 0.5 --wmax 2 --seed 5 -o"
        .split(' ')
        .map(String::from)
        .chain(std::iter::once(path.display().to_string()))
        .collect();
    let (out, _, code) = run_cli(&args);
    assert_eq!((out.as_str(), code), ("", 0));
    let text = std::fs::read_to_string(&path).unwrap();
    let game = celebrity_cli::format::parse_instance(&text).unwrap();
    assert_eq!(game.n(), 4);
    assert_eq!(game.beta(), 3);
}
