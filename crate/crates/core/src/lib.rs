//! Estimation of the log-determinant of a Gaussian covariance matrix and of
//! the differential entropy from i.i.d. samples, with exact finite-sample
//! bias and variance constants, CLT-based intervals, risk bounds and a
//! seeded Monte Carlo harness that checks the normal approximations.
//!
//! With `N = n + 1` observations in dimension `p <= n`,
//!
//! ```text
//! T̂ = log det Σ̂ − τ(n, p),   τ(n, p) = Σ_{k=1}^p [ψ((n−k+1)/2) − log(n/2)]
//! ```
//!
//! is unbiased for `log det Σ` and `(T̂ − log det Σ) / σ(n, p)` is
//! asymptotically standard normal with `σ(n, p)² = Σ_{k=1}^p 2/(n−k+1)`.

pub mod error;
pub mod estimator;
pub mod inference;
pub mod matstat;
pub mod sim;
pub mod specfun;
mod summation;

pub use error::{Error, Result};
pub use estimator::{EntropyEstimate, LogDetEstimate, ModelDims, RiskReport};
pub use inference::{EntropyTestResult, GaussianParams};
pub use matstat::{CovSpec, SampleMatrix, SpdMatrix};
pub use sim::{CltDiagnostics, CoverageReport, MseReport, Sampler, SimConfig};
