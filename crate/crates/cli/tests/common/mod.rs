#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

/// `(fixture file, arguments, expected exit code)`.
pub const GOLDEN: &[(&str, &[&str], i32)] = &[
    (
        "gen_monomial.json",
        &[
            "gen",
            "--catalog",
            "monomial",
            "--n",
            "3",
            "--format",
            "json",
        ],
        0,
    ),
    (
        "gen_falling.csv",
        &["gen", "--catalog", "falling", "--n", "6", "--format", "csv"],
        0,
    ),
    (
        "gen_abel.txt",
        &[
            "gen",
            "--catalog",
            "abel",
            "--param",
            "a=1/2",
            "--n",
            "6",
            "--format",
            "table",
        ],
        0,
    ),
    (
        "check_rising.txt",
        &["check", "--catalog", "rising", "--n", "10"],
        0,
    ),
    (
        "check_abel.json",
        &[
            "check",
            "--catalog",
            "abel",
            "--param",
            "a=2",
            "--n",
            "8",
            "--format",
            "json",
        ],
        0,
    ),
    (
        "check_laguerre_paper.txt",
        &[
            "check",
            "--catalog",
            "laguerre_paper",
            "--n",
            "6",
            "--hamiltonian-from-paper",
        ],
        1,
    ),
    (
        "pathint_monomial.txt",
        &[
            "pathint",
            "--catalog",
            "monomial",
            "--n",
            "2",
            "--x",
            "1",
            "--N",
            "2,4,8",
        ],
        0,
    ),
    (
        "pathint_falling.json",
        &[
            "pathint",
            "--catalog",
            "falling",
            "--n",
            "4",
            "--x",
            "1",
            "--format",
            "json",
        ],
        0,
    ),
    (
        "pathint_laguerre_plus.csv",
        &[
            "pathint",
            "--catalog",
            "laguerre_plus",
            "--n",
            "3",
            "--x",
            "-1/2",
            "--format",
            "csv",
        ],
        0,
    ),
];

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
}

pub fn run(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_umbra"))
        .args(args)
        .env_remove("UMBRA_MAX_PATHS")
        .output()
        .expect("umbra runs");
    (
        String::from_utf8(out.stdout).expect("utf-8"),
        String::from_utf8(out.stderr).expect("utf-8"),
        out.status.code().unwrap_or(-1),
    )
}

/// Mismatching fixtures; with `UMBRA_BLESS=1` rewrites them instead.
pub fn golden_mismatches() -> Vec<String> {
    let bless = std::env::var_os("UMBRA_BLESS").is_some();
    let mut bad = Vec::new();
    for (file, args, code) in GOLDEN {
        let (stdout, _, status) = run(args);
        let path = golden_dir().join(file);
        if bless {
            std::fs::write(&path, &stdout).expect("write fixture");
        }
        let expected = std::fs::read_to_string(&path).unwrap_or_default();
        if stdout != expected || status != *code {
            bad.push(format!("{file} (exit {status}, expected {code})"));
        }
    }
    bad
}
