//! Bias-corrected log-determinant and entropy estimators, their exact
//! finite-sample constants, and the accompanying risk bounds.
//!
//! Everything is indexed by [`ModelDims`]: `n` degrees of freedom (one less
//! than the number of observations) and dimension `p`. All sums run over
//! `k = 1..=p` in ascending order, i.e. from the smallest-magnitude term
//! upward, with compensated accumulation.

use std::f64::consts::{E, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matstat::{cholesky_log_det, sample_covariance, SampleMatrix};
use crate::specfun::{digamma, log_gamma, std_normal_quantile, trigamma};
use crate::summation::compensated_sum;

/// Degrees of freedom `n` and dimension `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModelDims {
    pub n: usize,
    pub p: usize,
}

impl ModelDims {
    pub fn new(n: usize, p: usize) -> Result<Self> {
        if n == 0 || p == 0 {
            return Err(Error::Dims {
                n,
                p,
                reason: "n and p must both be at least 1",
            });
        }
        Ok(Self { n, p })
    }

    /// Fails unless `1 <= p <= n`, the regime where the estimator and its
    /// CLT are defined.
    pub fn require_estimable(&self) -> Result<()> {
        if self.n == 0 || self.p == 0 {
            return Err(Error::Dims {
                n: self.n,
                p: self.p,
                reason: "n and p must both be at least 1",
            });
        }
        if self.p > self.n {
            return Err(Error::Dims {
                n: self.n,
                p: self.p,
                reason: "requires p <= n",
            });
        }
        Ok(())
    }

    /// Degrees of freedom `n − k + 1` of the k-th log-χ² term, k = 1..=p.
    fn dofs(&self) -> impl Iterator<Item = f64> {
        let n = self.n;
        (1..=self.p).map(move |k| (n - k + 1) as f64)
    }
}

/// Bias of `log det Σ̂`: `τ = Σ_k [ψ((n−k+1)/2) − log(n/2)]`. Always negative.
pub fn tau(dims: ModelDims) -> Result<f64> {
    dims.require_estimable()?;
    let log_half_n = (dims.n as f64 / 2.0).ln();
    let terms = dims
        .dofs()
        .map(|m| digamma(m / 2.0).map(|d| d - log_half_n))
        .collect::<Result<Vec<_>>>()?;
    Ok(compensated_sum(terms))
}

/// `σ² = Σ_k 2/(n−k+1)`.
pub fn sigma_squared(dims: ModelDims) -> Result<f64> {
    dims.require_estimable()?;
    Ok(compensated_sum(dims.dofs().map(|m| 2.0 / m)))
}

/// CLT scale `σ = sqrt(Σ_k 2/(n−k+1))`.
pub fn sigma(dims: ModelDims) -> Result<f64> {
    sigma_squared(dims).map(f64::sqrt)
}

/// Exact mean squared error of T̂ for every Σ: `Σ_k ψ'((n−k+1)/2)`.
pub fn exact_mse(dims: ModelDims) -> Result<f64> {
    dims.require_estimable()?;
    let terms = dims
        .dofs()
        .map(|m| trigamma(m / 2.0))
        .collect::<Result<Vec<_>>>()?;
    Ok(compensated_sum(terms))
}

/// Non-asymptotic risk bound `−2 log(1 − p/n) + (10p / 3n) / (n − p)`;
/// `+∞` at `p = n`.
pub fn risk_upper_bound(dims: ModelDims) -> Result<f64> {
    dims.require_estimable()?;
    if dims.p == dims.n {
        return Ok(f64::INFINITY);
    }
    let (n, p) = (dims.n as f64, dims.p as f64);
    Ok(-2.0 * (-p / n).ln_1p() + (10.0 * p) / (3.0 * n) / (n - p))
}

/// Information-inequality minimax lower bound `2p/n`.
pub fn info_lower_bound(dims: ModelDims) -> Result<f64> {
    dims.require_estimable()?;
    Ok(2.0 * dims.p as f64 / dims.n as f64)
}

/// `(1/32)(1 − sqrt((e − 1)/2))`, the two-point constant valid once
/// `np > max{1/(K−1)², 1}`.
pub fn diag_lower_bound_constant() -> f64 {
    (1.0 - ((E - 1.0) / 2.0).sqrt()) / 32.0
}

/// Minimax lower bound `C p / n` over scalar-diagonal covariances. Holds for
/// any `(n, p)`, in particular `p > n`, where it does not vanish.
pub fn diag_lower_bound(dims: ModelDims) -> Result<f64> {
    if dims.n == 0 || dims.p == 0 {
        return Err(Error::Dims {
            n: dims.n,
            p: dims.p,
            reason: "n and p must both be at least 1",
        });
    }
    Ok(diag_lower_bound_constant() * dims.p as f64 / dims.n as f64)
}

/// `r = Σ 1/(n−k+1)² / Σ 1/(n−k+1)`.
pub fn rnp_ratio(dims: ModelDims) -> Result<f64> {
    dims.require_estimable()?;
    let num = compensated_sum(dims.dofs().map(|m| 1.0 / (m * m)));
    let den = compensated_sum(dims.dofs().map(|m| 1.0 / m));
    Ok(num / den)
}

/// Uniform bound on [`rnp_ratio`] over `p <= n`:
/// `max{1/(log n + 1), (π²/6)/(log(n+1) − log(log n + 1))}`.
pub fn rnp_bound(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::Dims {
            n,
            p: 0,
            reason: "rnp_bound requires n >= 2",
        });
    }
    let nf = n as f64;
    let first = 1.0 / (nf.ln() + 1.0);
    let second = (PI * PI / 6.0) / ((nf + 1.0).ln() - (nf.ln() + 1.0).ln());
    Ok(first.max(second))
}

/// Centering for the `p = n` limit: `log (n−1)! − n log n`, via log Γ.
pub fn boundary_centering(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::Dims {
            n,
            p: n,
            reason: "boundary centering requires n >= 2",
        });
    }
    let nf = n as f64;
    Ok(log_gamma(nf)? - nf * nf.ln())
}

/// Standardized error `(t̂ − log det Σ) / σ`.
pub fn clt_standardize(t_hat: f64, true_log_det: f64, dims: ModelDims) -> Result<f64> {
    Ok((t_hat - true_log_det) / sigma(dims)?)
}

fn check_level(level: f64) -> Result<()> {
    if level > 0.0 && level < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            function: "confidence level",
            value: level,
            expected: "a probability strictly between 0 and 1",
        })
    }
}

/// Two-sided equal-tail normal half-width `z_{(1+level)/2} · sd`.
pub fn half_width(sd: f64, level: f64) -> Result<f64> {
    check_level(level)?;
    Ok(std_normal_quantile(0.5 * (1.0 + level))? * sd)
}

/// Point estimate of `log det Σ` with its CLT interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogDetEstimate {
    pub t_hat: f64,
    pub sigma: f64,
    pub tau: f64,
    pub ci_lower: f64,
    pub ci_upper: f64,
    pub level: f64,
}

impl LogDetEstimate {
    /// Builds the interval `t_hat ± z σ`.
    pub fn from_parts(t_hat: f64, tau: f64, sigma: f64, level: f64) -> Result<Self> {
        let hw = half_width(sigma, level)?;
        Ok(Self {
            t_hat,
            sigma,
            tau,
            ci_lower: t_hat - hw,
            ci_upper: t_hat + hw,
            level,
        })
    }

    pub fn contains(&self, value: f64) -> bool {
        self.ci_lower <= value && value <= self.ci_upper
    }
}

/// `p/2 + (p/2) log 2π`, the part of the Gaussian entropy not depending on Σ.
pub fn entropy_offset(p: usize) -> f64 {
    let p = p as f64;
    0.5 * p + 0.5 * p * (2.0 * PI).ln()
}

/// Differential entropy (nats) of `N_p(μ, Σ)` given `log det Σ`.
pub fn gaussian_entropy(p: usize, log_det: f64) -> f64 {
    entropy_offset(p) + 0.5 * log_det
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyEstimate {
    pub h_hat: f64,
    pub ci_lower: f64,
    pub ci_upper: f64,
    pub underlying: LogDetEstimate,
}

impl EntropyEstimate {
    pub fn from_log_det(p: usize, underlying: LogDetEstimate) -> Self {
        Self {
            h_hat: gaussian_entropy(p, underlying.t_hat),
            ci_lower: gaussian_entropy(p, underlying.ci_lower),
            ci_upper: gaussian_entropy(p, underlying.ci_upper),
            underlying,
        }
    }

    /// Standard deviation scale of ĥ, half that of T̂.
    pub fn sigma(&self) -> f64 {
        0.5 * self.underlying.sigma
    }
}

/// `T̂ = log det Σ̂ − τ(n, p)` from a sample, with an interval at `level`.
pub fn estimate_log_det(x: &SampleMatrix, level: f64) -> Result<LogDetEstimate> {
    check_level(level)?;
    let (cov, dims) = sample_covariance(x)?;
    estimate_from_covariance(&cov, dims, level)
}

pub(crate) fn estimate_from_covariance(
    cov: &crate::matstat::SpdMatrix,
    dims: ModelDims,
    level: f64,
) -> Result<LogDetEstimate> {
    const CONTEXT: &str = "consistent estimation of log det requires p <= n = N - 1 \
                           and a nonsingular sample covariance";
    if dims.p > dims.n {
        return Err(Error::SingularOrNotPd {
            index: dims.n,
            pivot: 0.0,
            context: Some(format!(
                "sample covariance has rank at most n = {} < p = {}; data with p > n \
                 cannot be consistently estimated, log det needs p <= n = N - 1",
                dims.n, dims.p
            )),
        });
    }
    let log_det = cholesky_log_det(cov).map_err(|e| e.with_pd_context(CONTEXT))?;
    let tau = tau(dims)?;
    LogDetEstimate::from_parts(log_det - tau, tau, sigma(dims)?, level)
}

/// Entropy estimate `p/2 + (p/2) log 2π + T̂/2`.
pub fn estimate_entropy(x: &SampleMatrix, level: f64) -> Result<EntropyEstimate> {
    let underlying = estimate_log_det(x, level)?;
    Ok(EntropyEstimate::from_log_det(x.cols(), underlying))
}

/// Exact risk of T̂ bracketed by the minimax bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RiskReport {
    pub exact_mse: f64,
    pub upper_bound: f64,
    pub info_lower_bound: f64,
    pub diag_lower_bound: f64,
    pub rnp: f64,
    /// Undefined for `n < 2`.
    pub rnp_bound: Option<f64>,
}

impl RiskReport {
    pub fn new(dims: ModelDims) -> Result<Self> {
        Ok(Self {
            exact_mse: exact_mse(dims)?,
            upper_bound: risk_upper_bound(dims)?,
            info_lower_bound: info_lower_bound(dims)?,
            diag_lower_bound: diag_lower_bound(dims)?,
            rnp: rnp_ratio(dims)?,
            rnp_bound: rnp_bound(dims.n).ok(),
        })
    }
}
