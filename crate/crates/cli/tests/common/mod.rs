//! Example invocations shared by the golden and acceptance suites.

#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
}

macro_rules! case {
    ($name:literal, $exit:literal, [$($arg:literal),* $(,)?]) => {
        Case { name: $name, args: &[$($arg),*], exit: $exit }
    };
}

pub const CASES: &[Case] = &[
    case!("check_subalgebra_borel", 0, ["check-subalgebra", "--algebra", "sl3", "--span", "sl3_borel.json"]),
    case!("check_subalgebra_not_closed", 1, ["check-subalgebra", "--algebra", "sl3", "--span", "sl3_not_closed.json"]),
    case!("hull_non_algebraic", 1, ["hull", "--algebra", "sl3", "--span", "sl3_non_algebraic.json"]),
    case!("hull_borel_sl2", 0, ["hull", "--algebra", "sl2", "--span", "sl2_borel.json"]),
    case!("hull_irrational", 3, ["hull", "--algebra", "sl3", "--span", "sl3_irrational.json"]),
    case!("killing_sl2", 0, ["killing", "--algebra", "sl2"]),
    case!("killing_borel_kernel", 0, ["killing", "--algebra", "sl2", "--span", "sl2_borel.json"]),
    case!("killing_bad_jacobi", 2, ["killing", "--algebra", "bad_jacobi.json"]),
    case!("levi_top_left_sl2", 0, ["levi", "--algebra", "sl3", "--span", "sl3_top_left_sl2.json"]),
    case!("levi_heisenberg_file", 0, ["levi", "--algebra", "heisenberg.json", "--span", "heisenberg_span.json"]),
    case!("rank_borel_sl3", 0, ["rank", "--algebra", "sl3", "--span", "sl3_borel.json"]),
    case!("jordan_non_algebraic", 0, ["jordan", "--algebra", "sl3", "--span", "sl3_non_algebraic.json"]),
    case!(
        "limit_conjugated_sl2",
        0,
        ["limit", "--algebra", "sl3", "--family", "family_conjugated_sl2.json", "--at", "inf"]
    ),
    case!("limit_rank_family", 0, ["limit", "--algebra", "sl2", "--family", "family_rank_sl2.json", "--at", "inf"]),
    case!("scan_rank", 0, ["scan-rank", "--algebra", "sl2", "--family", "family_rank_sl2.json"]),
    case!("scan_levi", 0, ["scan-levi", "--algebra", "sl3", "--family", "family_conjugated_sl2.json"]),
    case!("flatness_moving_line", 0, ["flatness", "--algebra", "sl3", "--family", "family_moving_line.json"]),
    case!("integrate_borel_sl3", 0, ["integrate", "--algebra", "sl3", "--span", "sl3_borel.json"]),
    case!("integrate_sl2", 0, ["integrate", "--algebra", "sl2", "--span", "sl2_full.json"]),
    case!("integrate_non_algebraic", 1, ["integrate", "--algebra", "sl3", "--span", "sl3_non_algebraic.json"]),
    case!(
        "group_check_borel_sl3",
        0,
        ["group-check", "--algebra", "sl3", "--span", "sl3_borel.json", "--trials", "50", "--seed", "7"]
    ),
    case!(
        "group_check_top_left_sl2",
        0,
        ["group-check", "--algebra", "sl3", "--span", "sl3_top_left_sl2.json", "--trials", "50"]
    ),
    case!("orbit_dim_regular", 0, ["orbit-dim", "--algebra", "sl3", "--span", "sl3_regular_nilpotent.json"]),
    case!("orbit_dim_minimal", 0, ["orbit-dim", "--algebra", "sl3", "--span", "sl3_minimal_nilpotent.json"]),
    case!("classify_sl2_e", 0, ["classify-sl2", "--span", "sl2_e.json"]),
    case!("classify_sl2_h", 0, ["classify-sl2", "--span", "sl2_h.json"]),
    case!("sl3_slice_h1", 0, ["sl3-slice", "--height", "1"]),
    case!("validate_bouquet_h2", 0, ["validate-bouquet", "--height", "2", "--seed", "3"]),
    case!("validate_bouquet_inconsistent", 1, ["validate-bouquet", "--bouquet", "bouquet_inconsistent_triple.json"]),
    case!("missing_input", 2, ["hull", "--algebra", "sl3", "--span", "does_not_exist.json"]),
];

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("data")
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_liemod"))
        .args(args)
        .current_dir(data_dir().join("inputs"))
        .output()
        .expect("the binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

/// Stdout on success and verdict paths, stderr on error paths.
pub fn golden_text(r: &Run) -> &str {
    if r.code == 0 || r.code == 1 {
        &r.stdout
    } else {
        &r.stderr
    }
}

pub fn golden_path(name: &str) -> PathBuf {
    data_dir().join("golden").join(format!("{name}.json"))
}
