//! Applications of the log-det estimator: a two-sample entropy-equality
//! test, Gaussian KL divergence, a bias-corrected log-det ratio, and QDA
//! discriminants. Quadratic forms and traces go through triangular solves
//! against Cholesky factors; no matrix is ever inverted explicitly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimator::{
    estimate_entropy, estimate_from_covariance, estimate_log_det, LogDetEstimate,
};
use crate::matstat::{sample_covariance, CholeskyFactor, SampleMatrix, SpdMatrix};
use crate::specfun::std_normal_cdf;

/// Mean and covariance of a `p`-variate Gaussian.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianParams {
    pub mean: Vec<f64>,
    pub covariance: SpdMatrix,
}

impl GaussianParams {
    pub fn new(mean: Vec<f64>, covariance: SpdMatrix) -> Result<Self> {
        if mean.len() != covariance.dim() {
            return Err(Error::DimensionMismatch {
                left: mean.len(),
                right: covariance.dim(),
            });
        }
        Ok(Self { mean, covariance })
    }

    pub fn dim(&self) -> usize {
        self.mean.len()
    }
}

fn same_dim(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left: a, right: b })
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            function: "significance level",
            value: alpha,
            expected: "a probability strictly between 0 and 1",
        })
    }
}

/// Wald test of `H(P) = H(Q)` from two independent samples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyTestResult {
    pub z_stat: f64,
    /// Two-sided, `2 (1 − Φ(|z|))`.
    pub p_value: f64,
    pub h1: f64,
    pub h2: f64,
    pub se: f64,
    /// Significance α.
    pub alpha: f64,
    /// Confidence level `1 − α`.
    pub level: f64,
    /// `p_value < α`.
    pub reject: bool,
}

/// `z = (Ĥ₁ − Ĥ₂) / sqrt(σ²_{n₁,p}/4 + σ²_{n₂,p}/4)`, unpooled.
pub fn entropy_equality_test(
    x1: &SampleMatrix,
    x2: &SampleMatrix,
    alpha: f64,
) -> Result<EntropyTestResult> {
    check_alpha(alpha)?;
    same_dim(x1.cols(), x2.cols())?;
    let level = 1.0 - alpha;
    let e1 = estimate_entropy(x1, level)?;
    let e2 = estimate_entropy(x2, level)?;
    let se = (e1.sigma().powi(2) + e2.sigma().powi(2)).sqrt();
    let z_stat = (e1.h_hat - e2.h_hat) / se;
    let p_value = 2.0 * std_normal_cdf(-z_stat.abs())?;
    Ok(EntropyTestResult {
        z_stat,
        p_value,
        h1: e1.h_hat,
        h2: e2.h_hat,
        se,
        alpha,
        level,
        reject: p_value < alpha,
    })
}

/// `KL(P ‖ Q) = ∫ p log(p/q)` for `P = N(μ₁, Σ₁)`, `Q = N(μ₂, Σ₂)`:
/// `½ (tr(Σ₂⁻¹Σ₁) − p + (μ₂−μ₁)ᵀΣ₂⁻¹(μ₂−μ₁) + log(det Σ₂ / det Σ₁))`.
pub fn kl_gaussian_exact(pp: &GaussianParams, qq: &GaussianParams) -> Result<f64> {
    same_dim(pp.dim(), qq.dim())?;
    let l1 = pp.covariance.cholesky()?;
    let l2 = qq.covariance.cholesky()?;
    let diff: Vec<f64> = qq.mean.iter().zip(&pp.mean).map(|(b, a)| b - a).collect();
    let trace = l2.trace_inv_times(&pp.covariance)?;
    let maha = l2.quad_form(&diff)?;
    let kl = 0.5 * (trace - pp.dim() as f64 + maha + l2.log_det() - l1.log_det());
    // Roundoff can push identical distributions a few ulps below zero.
    Ok(kl.max(0.0))
}

/// Bias-corrected estimate of `log det Σ₁ − log det Σ₂` as `T̂₁ − T̂₂`, with
/// variance `σ²_{n₁,p} + σ²_{n₂,p}`. The `tau` field carries `τ₁ − τ₂`.
pub fn logdet_ratio_estimate(
    x1: &SampleMatrix,
    x2: &SampleMatrix,
    level: f64,
) -> Result<LogDetEstimate> {
    same_dim(x1.cols(), x2.cols())?;
    let a = estimate_log_det(x1, level)?;
    let b = estimate_log_det(x2, level)?;
    LogDetEstimate::from_parts(
        a.t_hat - b.t_hat,
        a.tau - b.tau,
        (a.sigma.powi(2) + b.sigma.powi(2)).sqrt(),
        level,
    )
}

/// Which population a point is assigned to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Population {
    First,
    Second,
}

/// Components of a QDA discriminant
/// `Δ = −quad_first + quad_second − log_det_term`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Discriminant {
    pub delta: f64,
    /// `(z − μ₁)ᵀ Σ₁⁻¹ (z − μ₁)`
    pub quad_first: f64,
    /// `(z − μ₂)ᵀ Σ₂⁻¹ (z − μ₂)`
    pub quad_second: f64,
    /// Estimated or exact `log det Σ₁ − log det Σ₂`.
    pub log_det_term: f64,
}

impl Discriminant {
    fn new(quad_first: f64, quad_second: f64, log_det_term: f64) -> Self {
        Self {
            delta: -quad_first + quad_second - log_det_term,
            quad_first,
            quad_second,
            log_det_term,
        }
    }

    /// Population 1 iff `Δ > 0`.
    pub fn classify(&self) -> Population {
        if self.delta > 0.0 {
            Population::First
        } else {
            Population::Second
        }
    }
}

fn centered_quad(factor: &CholeskyFactor, z: &[f64], mean: &[f64]) -> Result<f64> {
    let d: Vec<f64> = z.iter().zip(mean).map(|(a, b)| a - b).collect();
    factor.quad_form(&d)
}

/// Oracle discriminant with known parameters.
pub fn qda_oracle_discriminant(
    z: &[f64],
    pp: &GaussianParams,
    qq: &GaussianParams,
) -> Result<Discriminant> {
    same_dim(pp.dim(), qq.dim())?;
    same_dim(z.len(), pp.dim())?;
    let l1 = pp.covariance.cholesky()?;
    let l2 = qq.covariance.cholesky()?;
    Ok(Discriminant::new(
        centered_quad(&l1, z, &pp.mean)?,
        centered_quad(&l2, z, &qq.mean)?,
        l1.log_det() - l2.log_det(),
    ))
}

/// Precomputed plug-in QDA rule: sample means and covariances, with the
/// bias-corrected log-det ratio `T̂₁ − T̂₂` in place of the log-det term.
#[derive(Debug, Clone)]
pub struct PluginQda {
    mean_first: Vec<f64>,
    mean_second: Vec<f64>,
    factor_first: CholeskyFactor,
    factor_second: CholeskyFactor,
    log_det_term: f64,
}

impl PluginQda {
    pub fn fit(x1: &SampleMatrix, x2: &SampleMatrix) -> Result<Self> {
        same_dim(x1.cols(), x2.cols())?;
        let (c1, d1) = sample_covariance(x1)?;
        let (c2, d2) = sample_covariance(x2)?;
        let t1 = estimate_from_covariance(&c1, d1, 0.95)?.t_hat;
        let t2 = estimate_from_covariance(&c2, d2, 0.95)?.t_hat;
        Ok(Self {
            mean_first: x1.column_means(),
            mean_second: x2.column_means(),
            factor_first: c1.cholesky()?,
            factor_second: c2.cholesky()?,
            log_det_term: t1 - t2,
        })
    }

    pub fn discriminant(&self, z: &[f64]) -> Result<Discriminant> {
        same_dim(z.len(), self.mean_first.len())?;
        Ok(Discriminant::new(
            centered_quad(&self.factor_first, z, &self.mean_first)?,
            centered_quad(&self.factor_second, z, &self.mean_second)?,
            self.log_det_term,
        ))
    }
}

pub fn qda_plugin_discriminant(
    z: &[f64],
    x1: &SampleMatrix,
    x2: &SampleMatrix,
) -> Result<Discriminant> {
    PluginQda::fit(x1, x2)?.discriminant(z)
}
