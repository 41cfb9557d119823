//! Regenerates the CSV fixtures used by the CLI tests:
//!
//! ```text
//! cargo run -p logdet-cli --example gen_fixtures -- crates/cli/tests/fixtures
//! ```

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use logdet_core::matstat::make_spd_from_spec;
use logdet_core::sim::{gaussian_sample, replicate_rng};
use logdet_core::CovSpec;

fn gaussian_csv(rows: usize, p: usize, spec: CovSpec, seed: u64, header: bool) -> String {
    let factor = make_spd_from_spec(&spec, p).unwrap().cholesky().unwrap();
    let x = gaussian_sample(rows, &factor, &mut replicate_rng(seed, 0)).unwrap();
    let mut out = String::new();
    if header {
        let names: Vec<String> = (1..=p).map(|j| format!("v{j}")).collect();
        writeln!(out, "{}", names.join(",")).unwrap();
    }
    for i in 0..rows {
        let cells: Vec<String> = x.row(i).iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", cells.join(",")).unwrap();
    }
    out
}

fn write(dir: &Path, name: &str, contents: &str) {
    std::fs::write(dir.join(name), contents).unwrap();
}

fn main() {
    let dir: PathBuf = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "crates/cli/tests/fixtures".into())
        .into();
    std::fs::create_dir_all(&dir).unwrap();

    write(&dir, "three_points.csv", "x\n0\n1\n2\n");
    write(
        &dir,
        "identity_p8.csv",
        &gaussian_csv(61, 8, CovSpec::Identity, 1, true),
    );
    write(
        &dir,
        "ar_p8.csv",
        &gaussian_csv(81, 8, CovSpec::Ar(0.5), 2, true),
    );
    write(
        &dir,
        "identity_p50.csv",
        &gaussian_csv(201, 50, CovSpec::Identity, 3, false),
    );
    write(
        &dir,
        "scaled_p50.csv",
        &gaussian_csv(201, 50, CovSpec::Diag(1.5), 4, false),
    );
    write(
        &dir,
        "wide_p50.csv",
        &gaussian_csv(11, 50, CovSpec::Identity, 5, false),
    );
    write(
        &dir,
        "identity_p3.csv",
        &gaussian_csv(30, 3, CovSpec::Identity, 6, false),
    );
    write(&dir, "missing_value.csv", "a,b\n1,2\n3,\n5,6\n");
    write(&dir, "ragged.csv", "1,2\n3\n5,6\n");
    write(&dir, "not_numeric.csv", "a,b\n1,2\n3,x\n");

    write(&dir, "params_diag2.csv", "0,0\n2,0\n0,2\n");
    write(&dir, "params_identity.csv", "0,0\n1,0\n0,1\n");
    write(&dir, "params_plus_e1.csv", "1,0\n1,0\n0,1\n");
    write(&dir, "params_minus_e1.csv", "-1,0\n1,0\n0,1\n");
    write(&dir, "params_not_pd.csv", "0,0\n1,2\n2,1\n");
    write(&dir, "params_p3.csv", "0,0,0\n1,0,0\n0,1,0\n0,0,1\n");
    write(&dir, "points.csv", "z1,z2\n0,0\n1,1\n-2,0.5\n");
    write(
        &dir,
        "points_p8.csv",
        &gaussian_csv(5, 8, CovSpec::Identity, 7, false),
    );
}
