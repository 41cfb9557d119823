#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Runs the binary from the fixture directory so reports echo short paths.
pub fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_logdet"))
        .args(args)
        .current_dir(fixtures())
        .output()
        .expect("spawn logdet")
}

pub fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

pub fn report(args: &[&str]) -> serde_json::Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

/// Golden reports: file name and argument list.
pub const GOLDEN_RUNS: &[(&str, &[&str])] = &[
    (
        "estimate_three_points.json",
        &["estimate", "three_points.csv"],
    ),
    (
        "estimate_identity_p8.json",
        &["estimate", "identity_p8.csv", "--level", "0.9"],
    ),
    ("bounds_100_50.json", &["bounds", "--n", "100", "--p", "50"]),
    ("bounds_50_50.json", &["bounds", "--n", "50", "--p", "50"]),
    (
        "bounds_10_1000.json",
        &["bounds", "--n", "10", "--p", "1000"],
    ),
    (
        "simulate_clt.json",
        &[
            "simulate", "clt", "--n", "500", "--p", "250", "--reps", "5000", "--seed", "7",
        ],
    ),
    (
        "simulate_clt_boundary.json",
        &[
            "simulate",
            "clt",
            "--n",
            "50",
            "--p",
            "50",
            "--reps",
            "500",
            "--centering",
            "boundary",
        ],
    ),
    (
        "simulate_coverage_full.json",
        &[
            "simulate",
            "coverage",
            "--n",
            "30",
            "--p",
            "5",
            "--reps",
            "300",
            "--seed",
            "3",
            "--sampler",
            "full",
            "--sigma",
            "ar:0.5",
        ],
    ),
    (
        "simulate_mse.json",
        &[
            "simulate", "mse", "--n", "100", "--p", "50", "--reps", "2000", "--seed", "11",
        ],
    ),
    (
        "test_entropy.json",
        &["test-entropy", "identity_p50.csv", "scaled_p50.csv"],
    ),
    (
        "kl_exact.json",
        &["kl", "params_diag2.csv", "params_identity.csv"],
    ),
    (
        "kl_data.json",
        &["kl", "--data", "identity_p8.csv", "ar_p8.csv"],
    ),
    (
        "qda_oracle.json",
        &[
            "qda",
            "params_plus_e1.csv",
            "params_minus_e1.csv",
            "--points",
            "points.csv",
        ],
    ),
    (
        "qda_plugin.json",
        &[
            "qda",
            "--plugin",
            "identity_p8.csv",
            "ar_p8.csv",
            "--points",
            "points_p8.csv",
        ],
    ),
];

/// Compares each golden run with its stored report; with
/// `LOGDET_UPDATE_GOLDEN` set, rewrites the stored files instead.
/// Returns the names that differ.
pub fn golden_mismatches() -> Vec<String> {
    let update = std::env::var_os("LOGDET_UPDATE_GOLDEN").is_some();
    let mut bad = Vec::new();
    for (name, args) in GOLDEN_RUNS {
        let got = stdout(args);
        let path = golden_dir().join(name);
        if update {
            std::fs::create_dir_all(golden_dir()).unwrap();
            std::fs::write(&path, &got).unwrap();
            continue;
        }
        match std::fs::read_to_string(&path) {
            Ok(want) if want == got => {}
            _ => bad.push(name.to_string()),
        }
    }
    bad
}

/// Every documented exit code with an invocation that should produce it.
pub const EXIT_CODE_RUNS: &[(i32, &[&str])] = &[
    (0, &["bounds", "--n", "5", "--p", "2"]),
    (2, &["estimate", "missing_value.csv"]),
    (2, &["estimate", "ragged.csv"]),
    (2, &["estimate", "not_numeric.csv"]),
    (2, &["estimate", "does_not_exist.csv"]),
    (2, &["estimate", "three_points.csv", "--level", "1.5"]),
    (2, &["bounds", "--n", "0", "--p", "3"]),
    (2, &["bounds", "--n", "ten", "--p", "3"]),
    (2, &["simulate", "clt", "--n", "10", "--p", "20"]),
    (
        2,
        &["simulate", "mse", "--n", "10", "--p", "2", "--reps", "0"],
    ),
    (
        2,
        &[
            "simulate", "clt", "--n", "10", "--p", "2", "--sigma", "ar:1.5",
        ],
    ),
    (
        2,
        &[
            "simulate",
            "clt",
            "--n",
            "10",
            "--p",
            "2",
            "--sampler",
            "fancy",
        ],
    ),
    (
        2,
        &[
            "simulate",
            "coverage",
            "--n",
            "10",
            "--p",
            "2",
            "--centering",
            "boundary",
        ],
    ),
    (
        2,
        &[
            "simulate",
            "clt",
            "--n",
            "10",
            "--p",
            "2",
            "--centering",
            "boundary",
        ],
    ),
    (2, &["kl", "params_diag2.csv", "identity_p8.csv"]),
    (3, &["estimate", "wide_p50.csv"]),
    (3, &["kl", "params_not_pd.csv", "params_identity.csv"]),
    (3, &["test-entropy", "wide_p50.csv", "wide_p50.csv"]),
    (4, &["test-entropy", "identity_p8.csv", "identity_p3.csv"]),
    (4, &["kl", "params_identity.csv", "params_p3.csv"]),
    (4, &["kl", "--data", "identity_p8.csv", "identity_p3.csv"]),
    (
        4,
        &[
            "qda",
            "params_plus_e1.csv",
            "params_minus_e1.csv",
            "--points",
            "points_p8.csv",
        ],
    ),
];
