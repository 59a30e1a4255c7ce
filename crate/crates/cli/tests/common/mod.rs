//! Golden transcripts: a fixed command list per fixture, run in-process, with
//! stdout, stderr, and the exit code captured.

#![allow(dead_code)]

use std::path::{Path, PathBuf};

pub const INSTANCE_CASES: &[&str] = &["star4", "unique3", "tight_beta1", "decimal3", "mixed5", "beta1_mixed5"];
pub const GRAPH_CASES: &[&str] = &["cycle6", "star5"];

pub fn tests_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests")
}

pub fn golden_path(case: &str) -> PathBuf {
    tests_dir().join("golden").join(format!("{case}.txt"))
}

/// Runs `args` (without the program name) and returns `(stdout, stderr, code)`.
pub fn run_cli(args: &[String]) -> (String, String, i32) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("celebrity".to_string()).chain(args.iter().cloned());
    let code = celebrity_cli::run(argv, &mut out, &mut err);
    (String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap(), code)
}

fn instance_commands(case: &str) -> Vec<(String, Vec<String>)> {
    let dir = tests_dir().join("data").join(case);
    let inst = dir.join("instance.txt").display().to_string();
    let prof = dir.join("profile.txt").display().to_string();
    let with_paths = |label: &str, extra: &[&str], profile: bool| {
        let mut args: Vec<String> = vec![label.split(' ').next().unwrap().to_string(), "--instance".into(), inst.clone()];
        if profile {
            args.push("--profile".into());
            args.push(prof.clone());
        }
        args.extend(extra.iter().map(|s| s.to_string()));
        let shown = format!(
            "{label}{}{}",
            if profile { " <profile>" } else { "" },
            extra.iter().map(|s| format!(" {s}")).collect::<String>()
        );
        (shown, args)
    };
    vec![
        with_paths("classify", &[], false),
        with_paths("eval", &[], true),
        with_paths("eval", &["--player", "1"], true),
        with_paths("check-ne", &[], true),
        with_paths("best-response", &["--player", "0", "--method", "exact"], true),
        with_paths("best-response", &["--player", "0", "--method", "greedy"], true),
        with_paths("best-response", &["--player", "0", "--method", "beta1"], true),
        with_paths("enumerate", &[], false),
        with_paths("poa", &[], false),
        with_paths("verify", &[], false),
        with_paths("dynamics", &["--schedule", "roundrobin", "--method", "exact"], false),
        with_paths("dynamics", &["--schedule", "random", "--seed", "7", "--method", "greedy"], true),
        with_paths("dynamics", &["--schedule", "random", "--seed", "7", "--max-rounds", "1", "--method", "exact"], false),
    ]
}

fn graph_commands(case: &str) -> Vec<(String, Vec<String>)> {
    let path = tests_dir().join("data").join(format!("{case}.graph")).display().to_string();
    vec![("reduce".to_string(), vec!["reduce".into(), "--graph".into(), path])]
}

fn gen_commands() -> Vec<(String, Vec<String>)> {
    [
        "gen --n 5 --alpha 3/2 --beta 2 --wmin 1/2 --wmax 3 --seed 2024",
        "gen --n 8 --alpha 1 --beta 1 --wmin 0.25 --wmax 4 --seed 1",
        "gen --n 3 --alpha 2 --beta 2 --wmin 1 --wmax 1 --seed 99",
    ]
    .iter()
    .map(|cmd| (cmd.to_string(), cmd.split(' ').map(String::from).collect()))
    .collect()
}

/// The transcript of every command for a fixture: `$ command`, then stdout,
/// then stderr lines prefixed with `! `, then the exit code.
pub fn transcript(case: &str) -> String {
    let commands = if INSTANCE_CASES.contains(&case) {
        instance_commands(case)
    } else if GRAPH_CASES.contains(&case) {
        graph_commands(case)
    } else {
        assert_eq!(case, "gen", "unknown fixture {case}");
        gen_commands()
    };
    let mut text = String::new();
    for (shown, args) in commands {
        let (out, err, code) = run_cli(&args);
        text.push_str(&format!("$ {shown}\n{out}"));
        for line in err.lines() {
            text.push_str(&format!("! {line}\n"));
        }
        text.push_str(&format!("exit {code}\n\n"));
    }
    text
}

pub fn all_cases() -> Vec<&'static str> {
    INSTANCE_CASES
        .iter()
        .chain(GRAPH_CASES)
        .copied()
        .chain(std::iter::once("gen"))
        .collect()
}

/// Compares the transcript of `case` against its golden file, rewriting the
/// file instead when `UPDATE_GOLDEN` is set.
pub fn check_golden(case: &str) -> Result<(), String> {
    let actual = transcript(case);
    let path = golden_path(case);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &actual).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let expected = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if expected == actual {
        Ok(())
    } else {
        let line = expected
            .lines()
            .zip(actual.lines())
            .position(|(a, b)| a != b)
            .map(|i| i + 1)
            .unwrap_or_else(|| expected.lines().count().min(actual.lines().count()) + 1);
        Err(format!("{case}: output differs from golden file at line {line}"))
    }
}
