#![allow(dead_code)]

pub mod oracle;

use std::path::PathBuf;
use std::process::Command;

/// (golden file stem, arguments) for every fixture map.
pub const FIXTURES: &[(&str, &[&str])] = &[
    ("classify_a", &["classify", "--map", "1/2,0,1,2"]),
    ("classify_b", &["classify", "--map", "5/3,4/3,4/3,5/3"]),
    ("classify_c", &["classify", "--map", "3,2,-2,-1", "--audit-primes", "100"]),
    ("case_a", &["case", "--tag", "A", "--c", "1", "--d", "2"]),
    ("case_a_fused", &["case", "--tag", "A", "--c", "3", "--d", "-1"]),
    ("case_b", &["case", "--tag", "B", "--t", "2/3"]),
    ("case_c", &["case", "--tag", "C", "--c", "-2", "--sign", "+"]),
    ("case_d", &["case", "--tag", "D", "--c", "1", "--sign", "-"]),
    ("case_e", &["case", "--tag", "E", "--a", "3", "--c", "2"]),
    ("case_f", &["case", "--tag", "F", "--a", "-3", "--c", "4"]),
    ("iterate_real", &["iterate", "--map", "1/2,0,1,2", "--x0", "1", "--place", "real", "--steps", "10"]),
    ("iterate_siegel", &["iterate", "--map", "1/2,0,1,2", "--x0", "3", "--place", "3", "--steps", "20"]),
    ("iterate_escape", &["iterate", "--map", "1/2,0,1,2", "--x0", "64", "--place", "2", "--steps", "5", "--xi", "0"]),
    ("adele_step", &["adele-step", "--map", "1/2,0,1,2", "--x0", "1", "--steps", "2"]),
    ("basin_siegel", &["basin", "--map", "1/2,0,1,2", "--place", "3", "--height", "3", "--steps", "20", "--xi", "0", "--format", "json"]),
    ("product_formula", &["product-formula", "-r", "-10/21"]),
    ("product_formula_fixed", &["product-formula", "-r", "-3/2"]),
    ("modular_1_plus", &["modular", "--family", "1", "--sign", "+", "--c", "1"]),
    ("modular_1_minus", &["modular", "--family", "1", "--sign", "-", "--c", "7"]),
    ("modular_2", &["modular", "--family", "2", "--sign", "+", "--a", "3"]),
    ("modular_3", &["modular", "--family", "3", "--sign", "-", "--c", "2"]),
    ("modular_4", &["modular", "--family", "4", "--sign", "+", "--a", "-2"]),
    ("modular_5", &["modular", "--family", "5", "--sign", "+", "--c", "2"]),
    ("cross_ratio", &["cross-ratio", "--map", "1/2,0,1,2", "--points", "0,1,3,4"]),
];

pub fn golden_path(stem: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{stem}.json"))
}

pub struct Run {
    pub code: i32,
    pub stdout: Vec<u8>,
    pub stderr: String,
}

/// Runs the binary with a clean environment so no `ADELIC_*` override leaks in.
pub fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_adelic-moebius"))
        .args(args)
        .env_clear()
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: out.stdout,
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}
