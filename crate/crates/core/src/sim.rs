//! Seeded Monte Carlo engine.
//!
//! Each replicate `r` draws from its own ChaCha stream `(seed, r)`, so the
//! output of every experiment is a pure function of its [`SimConfig`] and
//! does not depend on how rayon schedules the work. Replicate values are
//! collected in index order and reduced sequentially.
//!
//! Two samplers produce `log det Σ̂ − log det Σ`:
//!
//! * [`Sampler::FullMatrix`] generates `n + 1` Gaussian observations with the
//!   configured covariance and factorizes their sample covariance;
//! * [`Sampler::Bartlett`] draws `Σ_k log χ²_{n−k+1} − p log n` directly in
//!   `O(p)`, which has the same law for every Σ.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimator::{
    boundary_centering, exact_mse, info_lower_bound, risk_upper_bound, sigma, tau, LogDetEstimate,
    ModelDims,
};
use crate::matstat::{
    cholesky_log_det, make_spd_from_spec, sample_covariance, CholeskyFactor, CovSpec, SampleMatrix,
};
use crate::specfun::std_normal_cdf;
use crate::summation::compensated_sum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sampler {
    FullMatrix,
    Bartlett,
}

impl fmt::Display for Sampler {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sampler::FullMatrix => "full",
            Sampler::Bartlett => "bartlett",
        })
    }
}

impl FromStr for Sampler {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" | "full_matrix" => Ok(Sampler::FullMatrix),
            "bartlett" => Ok(Sampler::Bartlett),
            other => Err(Error::Config(format!(
                "unknown sampler `{other}`, expected full or bartlett"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub n: usize,
    pub p: usize,
    pub reps: usize,
    pub seed: u64,
    pub sampler: Sampler,
    /// Population covariance; ignored by the Bartlett sampler.
    pub sigma_spec: CovSpec,
    /// Interval level for coverage runs.
    pub level: f64,
}

impl SimConfig {
    pub fn bartlett(n: usize, p: usize, reps: usize, seed: u64) -> Self {
        Self {
            n,
            p,
            reps,
            seed,
            sampler: Sampler::Bartlett,
            sigma_spec: CovSpec::Identity,
            level: 0.95,
        }
    }

    pub fn full(n: usize, p: usize, reps: usize, seed: u64, sigma_spec: CovSpec) -> Self {
        Self {
            sampler: Sampler::FullMatrix,
            sigma_spec,
            ..Self::bartlett(n, p, reps, seed)
        }
    }

    pub fn dims(&self) -> ModelDims {
        ModelDims {
            n: self.n,
            p: self.p,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.dims()
            .require_estimable()
            .map_err(|e| Error::Config(e.to_string()))?;
        if self.reps == 0 {
            return Err(Error::Config("reps must be at least 1".into()));
        }
        if !(self.level > 0.0 && self.level < 1.0) {
            return Err(Error::Config(format!(
                "level must lie in (0, 1), got {}",
                self.level
            )));
        }
        self.sigma_spec
            .validate()
            .map_err(|e| Error::Config(e.to_string()))
    }
}

/// Independent generator for replicate `index` under `seed`.
pub fn replicate_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Evaluates `f` on every replicate stream in parallel and returns the
/// results in replicate order.
pub fn replicate_map<T, F>(seed: u64, reps: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng) -> Result<T> + Sync,
{
    (0..reps as u64)
        .into_par_iter()
        .map(|r| f(&mut replicate_rng(seed, r)))
        .collect()
}

/// One Bartlett draw of `log det Σ̂ − log det Σ`.
pub fn sample_bartlett_logdet<R: Rng + ?Sized>(dims: ModelDims, rng: &mut R) -> Result<f64> {
    dims.require_estimable()?;
    let mut total = 0.0;
    for k in 1..=dims.p {
        let dof = (dims.n - k + 1) as f64;
        // χ²_m = Gamma(shape m/2, scale 2)
        let chi2 = Gamma::new(0.5 * dof, 2.0)
            .map_err(|e| Error::Config(format!("chi-square with {dof} dof: {e}")))?;
        total += chi2.sample(rng).ln();
    }
    Ok(total - dims.p as f64 * (dims.n as f64).ln())
}

/// `rows` observations of `N_p(0, L Lᵀ)`.
pub fn gaussian_sample<R: Rng + ?Sized>(
    rows: usize,
    factor: &CholeskyFactor,
    rng: &mut R,
) -> Result<SampleMatrix> {
    let p = factor.dim();
    let z: Vec<f64> = (0..rows * p).map(|_| StandardNormal.sample(rng)).collect();
    SampleMatrix::new(rows, p, z)?.transformed(factor)
}

/// Full-matrix sampler with Σ factorized once.
#[derive(Debug, Clone)]
pub struct FullMatrixSampler {
    factor: CholeskyFactor,
    log_det_sigma: f64,
}

impl FullMatrixSampler {
    pub fn new(spec: &CovSpec, p: usize) -> Result<Self> {
        let factor = make_spd_from_spec(spec, p)?.cholesky()?;
        let log_det_sigma = factor.log_det();
        Ok(Self {
            factor,
            log_det_sigma,
        })
    }

    pub fn log_det_sigma(&self) -> f64 {
        self.log_det_sigma
    }

    /// Draws `n + 1` observations and returns `log det Σ̂ − log det Σ`.
    pub fn draw<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Result<f64> {
        ModelDims {
            n,
            p: self.factor.dim(),
        }
        .require_estimable()?;
        let x = gaussian_sample(n + 1, &self.factor, rng)?;
        let (cov, _) = sample_covariance(&x)?;
        Ok(cholesky_log_det(&cov)? - self.log_det_sigma)
    }
}

/// One full-matrix draw of `log det Σ̂ − log det Σ`.
pub fn sample_full_logdet<R: Rng + ?Sized>(
    dims: ModelDims,
    sigma_spec: &CovSpec,
    rng: &mut R,
) -> Result<f64> {
    dims.require_estimable()?;
    FullMatrixSampler::new(sigma_spec, dims.p)?.draw(dims.n, rng)
}

/// `log det Σ̂ − log det Σ` for every replicate of `cfg`.
pub fn draw_log_det_errors(cfg: &SimConfig) -> Result<Vec<f64>> {
    cfg.validate()?;
    let dims = cfg.dims();
    match cfg.sampler {
        Sampler::Bartlett => {
            replicate_map(cfg.seed, cfg.reps, |rng| sample_bartlett_logdet(dims, rng))
        }
        Sampler::FullMatrix => {
            let sampler = FullMatrixSampler::new(&cfg.sigma_spec, cfg.p)?;
            replicate_map(cfg.seed, cfg.reps, |rng| sampler.draw(cfg.n, rng))
        }
    }
}

/// Empirical law of a standardized statistic against N(0, 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CltDiagnostics {
    pub mean: f64,
    /// Divisor `reps − 1`; zero when `reps = 1`.
    pub variance: f64,
    pub skewness: f64,
    pub ks_stat: f64,
    pub reps: usize,
}

impl CltDiagnostics {
    pub fn from_standardized(z: &[f64]) -> Result<Self> {
        let ks_stat = ks_statistic(z, |x| std_normal_cdf(x).unwrap_or(f64::NAN))?;
        let m = z.len() as f64;
        let mean = compensated_sum(z.iter().copied()) / m;
        let m2 = compensated_sum(z.iter().map(|v| (v - mean).powi(2)));
        let m3 = compensated_sum(z.iter().map(|v| (v - mean).powi(3)));
        let variance = if z.len() > 1 { m2 / (m - 1.0) } else { 0.0 };
        let skewness = if m2 > 0.0 {
            (m3 / m) / (m2 / m).powf(1.5)
        } else {
            0.0
        };
        Ok(Self {
            mean,
            variance,
            skewness,
            ks_stat,
            reps: z.len(),
        })
    }
}

/// Standardizes draws by the exact constants `(x − τ) / σ` and compares
/// them with N(0, 1).
pub fn run_clt_experiment(cfg: &SimConfig) -> Result<CltDiagnostics> {
    let draws = draw_log_det_errors(cfg)?;
    let dims = cfg.dims();
    let (t, s) = (tau(dims)?, sigma(dims)?);
    let z: Vec<f64> = draws.iter().map(|d| (d - t) / s).collect();
    CltDiagnostics::from_standardized(&z)
}

/// `p = n` variant standardized by `log (n−1)! − n log n` and
/// `sqrt(2 log n)` instead of the exact constants.
pub fn run_boundary_clt_experiment(cfg: &SimConfig) -> Result<CltDiagnostics> {
    if cfg.p != cfg.n {
        return Err(Error::Config(format!(
            "boundary standardization needs p = n, got n = {}, p = {}",
            cfg.n, cfg.p
        )));
    }
    let draws = draw_log_det_errors(cfg)?;
    let center = boundary_centering(cfg.n)?;
    let scale = (2.0 * (cfg.n as f64).ln()).sqrt();
    let z: Vec<f64> = draws.iter().map(|d| (d - center) / scale).collect();
    CltDiagnostics::from_standardized(&z)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoverageReport {
    pub level: f64,
    pub empirical_coverage: f64,
    pub reps: usize,
    /// `sqrt(level (1 − level) / reps)`, the binomial standard error at
    /// nominal coverage.
    pub mc_stderr: f64,
}

/// Fraction of replicates whose interval contains the true log det.
pub fn run_coverage_experiment(cfg: &SimConfig) -> Result<CoverageReport> {
    let draws = draw_log_det_errors(cfg)?;
    let dims = cfg.dims();
    let (t, s) = (tau(dims)?, sigma(dims)?);
    // Draws are relative to log det Σ, so the truth sits at zero.
    let mut covered = 0usize;
    for d in &draws {
        if LogDetEstimate::from_parts(d - t, t, s, cfg.level)?.contains(0.0) {
            covered += 1;
        }
    }
    let reps = draws.len();
    Ok(CoverageReport {
        level: cfg.level,
        empirical_coverage: covered as f64 / reps as f64,
        reps,
        mc_stderr: (cfg.level * (1.0 - cfg.level) / reps as f64).sqrt(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MseReport {
    pub empirical_mse: f64,
    pub exact_mse: f64,
    /// `+∞` at `p = n`.
    pub upper_bound: f64,
    pub lower_bound: f64,
    pub reps: usize,
}

/// Empirical squared error of T̂ next to its exact value and bounds.
pub fn run_mse_experiment(cfg: &SimConfig) -> Result<MseReport> {
    let draws = draw_log_det_errors(cfg)?;
    let dims = cfg.dims();
    let t = tau(dims)?;
    let sse = compensated_sum(draws.iter().map(|d| (d - t) * (d - t)));
    Ok(MseReport {
        empirical_mse: sse / draws.len() as f64,
        exact_mse: exact_mse(dims)?,
        upper_bound: risk_upper_bound(dims)?,
        lower_bound: info_lower_bound(dims)?,
        reps: draws.len(),
    })
}

fn sorted_finite(samples: &[f64]) -> Result<Vec<f64>> {
    if samples.is_empty() {
        return Err(Error::InvalidInput(
            "KS statistic needs at least one sample".into(),
        ));
    }
    if samples.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput(
            "KS statistic needs finite samples".into(),
        ));
    }
    let mut v = samples.to_vec();
    v.sort_by(f64::total_cmp);
    Ok(v)
}

/// One-sample Kolmogorov-Smirnov distance `sup |F_m − F|`.
pub fn ks_statistic<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> Result<f64> {
    let xs = sorted_finite(samples)?;
    let m = xs.len() as f64;
    let d = xs.iter().enumerate().fold(0.0f64, |acc, (i, &x)| {
        let f = cdf(x);
        let above = (i + 1) as f64 / m - f;
        let below = f - i as f64 / m;
        acc.max(above).max(below)
    });
    Ok(d)
}

/// Two-sample Kolmogorov-Smirnov distance between empirical CDFs.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<f64> {
    let xs = sorted_finite(a)?;
    let ys = sorted_finite(b)?;
    let (na, nb) = (xs.len() as f64, ys.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d = 0.0f64;
    while i < xs.len() && j < ys.len() {
        let x = xs[i].min(ys[j]);
        while i < xs.len() && xs[i] <= x {
            i += 1;
        }
        while j < ys.len() && ys[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(d)
}

/// Asymptotic two-sample KS critical value `sqrt(−ln(α/2)/2) · sqrt((m+n)/(mn))`.
pub fn ks_two_sample_critical_value(alpha: f64, m: usize, n: usize) -> f64 {
    let c = (-(alpha / 2.0).ln() / 2.0).sqrt();
    c * ((m + n) as f64 / (m as f64 * n as f64)).sqrt()
}
