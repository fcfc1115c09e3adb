#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

/// (golden name, arguments, expected exit code) for the criteria 1–4 inputs.
pub const GOLDEN_CASES: &[(&str, &[&str], i32)] = &[
    (
        "wallis_eval_integral",
        &[
            "eval", "--a", "1", "--b", "1", "--n", "1/2", "--method", "integral",
        ],
        0,
    ),
    (
        "wallis_eval_product",
        &[
            "eval", "--a", "1", "--b", "1", "--n", "1/2", "--method", "product",
        ],
        0,
    ),
    (
        "wallis_compare",
        &["compare", "--a", "1", "--b", "1", "--n", "1/2"],
        0,
    ),
    (
        "wallis_table",
        &[
            "table", "--a", "1", "--b", "1", "--frac", "1/2", "--count", "3",
        ],
        0,
    ),
    (
        "neg_half_eval_oracle",
        &[
            "eval", "--a", "1", "--b", "1", "--n", "-1/2", "--method", "oracle",
        ],
        0,
    ),
    (
        "neg_half_eval_product",
        &[
            "eval", "--a", "1", "--b", "1", "--n", "-1/2", "--method", "product",
        ],
        0,
    ),
    (
        "neg_half_compare",
        &["compare", "--a", "1", "--b", "1", "--n", "-1/2"],
        0,
    ),
    (
        "odd_eval_integral",
        &[
            "eval", "--a", "1", "--b", "2", "--n", "1/2", "--method", "integral",
        ],
        0,
    ),
    (
        "odd_eval_divergent",
        &["eval", "--a", "1", "--b", "2", "--n", "-1/2"],
        2,
    ),
    (
        "odd_compare",
        &["compare", "--a", "1", "--b", "2", "--n", "1/2"],
        0,
    ),
    (
        "odd_table",
        &[
            "table", "--a", "1", "--b", "2", "--frac", "1/2", "--count", "2",
        ],
        0,
    ),
    (
        "third_eval_integral",
        &[
            "eval", "--a", "1", "--b", "1", "--n", "1/3", "--method", "integral",
        ],
        0,
    ),
    (
        "third_compare",
        &["compare", "--a", "1", "--b", "1", "--n", "1/3"],
        0,
    ),
    (
        "third_table",
        &[
            "table", "--a", "1", "--b", "1", "--frac", "1/3", "--count", "2",
        ],
        0,
    ),
];

pub const JSON_FLAGS: &[&str] = &["--format", "json", "--precision", "15"];

pub fn hyperterm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperterm"))
        .args(args)
        .output()
        .expect("failed to run hyperterm")
}

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
        .join(format!("{name}.json"))
}

/// Runs one golden case; `Err` describes the mismatch.
pub fn check_golden(name: &str, args: &[&str], code: i32) -> Result<(), String> {
    let all: Vec<&str> = args.iter().chain(JSON_FLAGS).copied().collect();
    let out = hyperterm(&all);
    if out.status.code() != Some(code) {
        return Err(format!(
            "{name}: exit {:?}, expected {code}",
            out.status.code()
        ));
    }
    let path = golden_path(name);
    if std::env::var_os("HYPERTERM_BLESS").is_some() {
        std::fs::write(&path, &out.stdout).map_err(|e| e.to_string())?;
    }
    let want =
        std::fs::read(&path).map_err(|e| format!("{name}: cannot read {}: {e}", path.display()))?;
    if want != out.stdout {
        return Err(format!(
            "{name}: output differs from golden\n--- expected\n{}\n--- actual\n{}",
            String::from_utf8_lossy(&want),
            String::from_utf8_lossy(&out.stdout)
        ));
    }
    Ok(())
}
