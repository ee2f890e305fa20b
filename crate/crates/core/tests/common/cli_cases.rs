//! Fixture invocations of the binary, shared by the CLI and acceptance tests.

use std::path::{Path, PathBuf};
use std::process::Command;

pub const BIN: &str = env!("CARGO_BIN_EXE_framed-tqft");
pub const ROOT: &str = env!("CARGO_MANIFEST_DIR");

/// (golden name, expected exit code, arguments)
pub const CASES: &[(&str, i32, &[&str])] = &[
    (
        "eval_semion_s3",
        0,
        &["eval", "--theory", "semion", "--presentation", "tests/fixtures/s3.txt"],
    ),
    (
        "eval_semion_l21_json",
        0,
        &[
            "eval",
            "--theory",
            "semion",
            "--presentation",
            "tests/fixtures/l21.txt",
            "--json",
        ],
    ),
    (
        "eval_z3_boundary_corrected",
        0,
        &[
            "eval",
            "--theory",
            "z3",
            "--presentation",
            "tests/fixtures/solid_torus.txt",
            "--corrected",
        ],
    ),
    (
        "eval_config_theory",
        0,
        &[
            "eval",
            "--theory",
            "tests/fixtures/toric.theory",
            "--presentation",
            "tests/fixtures/l21.txt",
            "--presentation",
            "tests/fixtures/two_circles.txt",
            "--corrected",
            "--json",
        ],
    ),
    (
        "moves_blowup",
        0,
        &[
            "moves",
            "--theory",
            "semion",
            "--presentation",
            "tests/fixtures/k1.txt",
            "--script",
            "tests/fixtures/blowup.script",
        ],
    ),
    (
        "moves_slides_json",
        0,
        &[
            "moves",
            "--theory",
            "z4",
            "--presentation",
            "tests/fixtures/two_circles.txt",
            "--script",
            "tests/fixtures/slides.script",
            "--json",
        ],
    ),
    (
        "moves_without_theory",
        0,
        &[
            "moves",
            "--presentation",
            "tests/fixtures/two_circles.txt",
            "--script",
            "tests/fixtures/slides.script",
        ],
    ),
    (
        "homology",
        0,
        &[
            "homology",
            "--presentation",
            "tests/fixtures/l21.txt",
            "--presentation",
            "tests/fixtures/two_circles.txt",
        ],
    ),
    (
        "axioms_z3",
        0,
        &["axioms", "--theory", "z3", "--seed", "7", "--budget", "4"],
    ),
    (
        "axioms_semion_json",
        0,
        &["axioms", "--theory", "semion", "--seed", "1", "--budget", "2", "--json"],
    ),
    (
        "functor_toric",
        0,
        &["functor", "--theory", "toric-code", "--seed", "3", "--budget", "3"],
    ),
    (
        "axioms_twist_mutant",
        2,
        &["axioms", "--theory", "semion", "--budget", "4", "--mutation", "twist"],
    ),
    (
        "axioms_normalization_mutant",
        2,
        &[
            "axioms",
            "--theory",
            "z3",
            "--budget",
            "2",
            "--mutation",
            "normalization",
            "--json",
        ],
    ),
    (
        "error_unknown_circle",
        1,
        &[
            "eval",
            "--theory",
            "semion",
            "--presentation",
            "tests/fixtures/unknown_circle.txt",
        ],
    ),
    (
        "error_syntax",
        1,
        &["homology", "--presentation", "tests/fixtures/bad_syntax.txt"],
    ),
    (
        "error_theory_file",
        1,
        &["axioms", "--theory", "tests/fixtures/broken.theory"],
    ),
    (
        "error_missing_theory",
        1,
        &["eval", "--presentation", "tests/fixtures/l21.txt"],
    ),
    (
        "error_missing_script",
        1,
        &["moves", "--presentation", "tests/fixtures/l21.txt"],
    ),
    (
        "error_missing_file",
        1,
        &["homology", "--presentation", "tests/fixtures/nonexistent.txt"],
    ),
    ("error_unknown_flag", 1, &["eval", "--frobnicate"]),
];

pub fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(BIN)
        .args(args)
        .current_dir(ROOT)
        .output()
        .expect("binary runs");
    let code = out.status.code().expect("exited normally");
    let text = format!(
        "exit {code}\n--- stdout\n{}--- stderr\n{}",
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap()
    );
    (code, text)
}

pub fn golden_path(name: &str) -> PathBuf {
    Path::new(ROOT).join("tests/golden/cli").join(format!("{name}.out"))
}
