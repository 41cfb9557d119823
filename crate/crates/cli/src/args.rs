use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use logdet_core::{CovSpec, Sampler};

/// Seed used when `--seed` is not given, so casual runs are reproducible.
pub const DEFAULT_SEED: u64 = 20_160_521;

#[derive(Debug, Parser)]
#[command(
    name = "logdet",
    version,
    about = "Log-determinant and Gaussian entropy estimation with exact bias correction"
)]
pub struct Cli {
    /// Write the JSON report to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bias-corrected log det Σ and entropy estimates from a CSV sample.
    Estimate {
        /// CSV file, rows = observations, columns = variables.
        data: PathBuf,
        #[arg(long, default_value_t = 0.95, value_parser = probability)]
        level: f64,
    },
    /// Exact constants and risk bounds for given dimensions.
    Bounds {
        /// Degrees of freedom (number of observations minus one).
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// Dimension.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        p: u64,
    },
    /// Seeded Monte Carlo experiments.
    Simulate(SimulateArgs),
    /// Two-sample test of equal Gaussian entropy.
    TestEntropy {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, default_value_t = 0.05, value_parser = probability)]
        alpha: f64,
    },
    /// Exact Gaussian KL divergence from parameter files, or the estimated
    /// log-det ratio from two samples with `--data`.
    Kl {
        /// Parameter file (first row mean, then the covariance rows) or, with
        /// `--data`, a sample CSV.
        first: PathBuf,
        second: PathBuf,
        /// Treat both inputs as samples and estimate log det Σ₁ − log det Σ₂.
        #[arg(long)]
        data: bool,
        #[arg(long, default_value_t = 0.95, value_parser = probability)]
        level: f64,
    },
    /// Quadratic discriminant values and decisions for a set of points.
    Qda {
        /// Parameter file, or a sample CSV with `--plugin`.
        first: PathBuf,
        second: PathBuf,
        /// CSV of points to classify, one per row.
        #[arg(long)]
        points: PathBuf,
        /// Fit the rule from samples with the bias-corrected log-det ratio.
        #[arg(long)]
        plugin: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SimKind {
    Clt,
    Coverage,
    Mse,
}

impl SimKind {
    pub fn name(self) -> &'static str {
        match self {
            SimKind::Clt => "clt",
            SimKind::Coverage => "coverage",
            SimKind::Mse => "mse",
        }
    }
}

/// Standardization used by `simulate clt`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Centering {
    /// Exact τ and σ.
    Exact,
    /// `log (n−1)! − n log n` and `sqrt(2 log n)`; requires p = n.
    Boundary,
}

impl Centering {
    pub fn name(self) -> &'static str {
        match self {
            Centering::Exact => "exact",
            Centering::Boundary => "boundary",
        }
    }
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(value_enum)]
    pub kind: SimKind,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub p: usize,
    #[arg(long, default_value_t = 1000)]
    pub reps: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value = "bartlett", value_parser = parse_sampler)]
    pub sampler: Sampler,
    /// identity, diag:a, ar:rho or random:seed
    #[arg(long, default_value = "identity", value_parser = parse_cov_spec)]
    pub sigma: CovSpec,
    #[arg(long, default_value_t = 0.95, value_parser = probability)]
    pub level: f64,
    #[arg(long, value_enum, default_value_t = Centering::Exact)]
    pub centering: Centering,
}

fn probability(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v < 1.0 {
        Ok(v)
    } else {
        Err(format!("{v} is not strictly between 0 and 1"))
    }
}

fn parse_sampler(s: &str) -> Result<Sampler, String> {
    s.parse().map_err(|e: logdet_core::Error| e.to_string())
}

fn parse_cov_spec(s: &str) -> Result<CovSpec, String> {
    s.parse().map_err(|e: logdet_core::Error| e.to_string())
}
