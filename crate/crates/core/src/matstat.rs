//! Dense linear algebra for the estimation pipeline: centering, the sample
//! covariance with divisor `n = N − 1`, and log-determinants through a
//! Cholesky factor.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimator::ModelDims;

/// `N` observations (rows) of `p` variables (columns), row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleMatrix {
    data: Vec<f64>,
    rows: usize,
    cols: usize,
}

impl SampleMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows < 2 {
            return Err(Error::InvalidInput(format!(
                "need at least 2 observations, got {rows}"
            )));
        }
        if cols == 0 {
            return Err(Error::InvalidInput("need at least one variable".into()));
        }
        if data.len() != rows * cols {
            return Err(Error::InvalidInput(format!(
                "expected {} entries for a {rows}x{cols} sample, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "non-finite entry at row {}, column {}",
                pos / cols,
                pos % cols
            )));
        }
        Ok(Self { data, rows, cols })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != cols) {
            return Err(Error::InvalidInput(format!(
                "row {i} has {} values, expected {cols}",
                r.len()
            )));
        }
        Self::new(rows.len(), cols, rows.concat())
    }

    /// Number of observations `N`.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Dimension `p`.
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn column_means(&self) -> Vec<f64> {
        let mut mean = vec![0.0; self.cols];
        for r in 0..self.rows {
            for (m, v) in mean.iter_mut().zip(self.row(r)) {
                *m += v;
            }
        }
        let inv = 1.0 / self.rows as f64;
        mean.iter_mut().for_each(|m| *m *= inv);
        mean
    }

    /// Every entry multiplied by `c`.
    pub fn scaled(&self, c: f64) -> Self {
        Self {
            data: self.data.iter().map(|v| v * c).collect(),
            rows: self.rows,
            cols: self.cols,
        }
    }

    /// Adds `shift` to every observation.
    pub fn shifted(&self, shift: &[f64]) -> Result<Self> {
        if shift.len() != self.cols {
            return Err(Error::DimensionMismatch {
                left: self.cols,
                right: shift.len(),
            });
        }
        let mut data = self.data.clone();
        for row in data.chunks_mut(self.cols) {
            row.iter_mut().zip(shift).for_each(|(v, s)| *v += s);
        }
        Ok(Self {
            data,
            rows: self.rows,
            cols: self.cols,
        })
    }

    /// Maps each observation `y` to `L y` for a lower-triangular `L`.
    pub fn transformed(&self, factor: &CholeskyFactor) -> Result<Self> {
        if factor.dim() != self.cols {
            return Err(Error::DimensionMismatch {
                left: self.cols,
                right: factor.dim(),
            });
        }
        let mut data = Vec::with_capacity(self.data.len());
        for r in 0..self.rows {
            data.extend(factor.lower_mul(self.row(r)));
        }
        Ok(Self {
            data,
            rows: self.rows,
            cols: self.cols,
        })
    }
}

/// Symmetric `p × p` matrix, row-major. Positive definiteness is only
/// established by [`SpdMatrix::cholesky`].
#[derive(Debug, Clone, PartialEq)]
pub struct SpdMatrix {
    entries: Vec<f64>,
    dim: usize,
}

impl SpdMatrix {
    pub fn new(dim: usize, entries: Vec<f64>) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::InvalidInput(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                entries.len()
            )));
        }
        if entries.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("matrix has non-finite entries".into()));
        }
        for i in 0..dim {
            for j in 0..i {
                if entries[i * dim + j] != entries[j * dim + i] {
                    return Err(Error::InvalidInput(format!(
                        "matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(Self { entries, dim })
    }

    /// Builds a matrix from a possibly slightly asymmetric array by averaging
    /// it with its transpose.
    pub fn symmetrized(dim: usize, mut entries: Vec<f64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Self::new(dim, entries);
        }
        for i in 0..dim {
            for j in 0..i {
                let avg = 0.5 * (entries[i * dim + j] + entries[j * dim + i]);
                entries[i * dim + j] = avg;
                entries[j * dim + i] = avg;
            }
        }
        Self::new(dim, entries)
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal(&vec![1.0; dim])
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let dim = values.len();
        let mut entries = vec![0.0; dim * dim];
        for (i, v) in values.iter().enumerate() {
            entries[i * dim + i] = *v;
        }
        Self { entries, dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.dim + j]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.entries
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            entries: self.entries.iter().map(|v| v * c).collect(),
            dim: self.dim,
        }
    }

    /// Lower-triangular factor `L` with `A = L Lᵀ`.
    pub fn cholesky(&self) -> Result<CholeskyFactor> {
        let p = self.dim;
        let mut lower = vec![0.0; p * p];
        for j in 0..p {
            let mut pivot = self.entries[j * p + j];
            for k in 0..j {
                pivot -= lower[j * p + k] * lower[j * p + k];
            }
            if !(pivot > 0.0 && pivot.is_finite()) {
                return Err(Error::SingularOrNotPd {
                    index: j,
                    pivot,
                    context: None,
                });
            }
            let diag = pivot.sqrt();
            lower[j * p + j] = diag;
            for i in j + 1..p {
                let mut v = self.entries[i * p + j];
                for k in 0..j {
                    v -= lower[i * p + k] * lower[j * p + k];
                }
                lower[i * p + j] = v / diag;
            }
        }
        Ok(CholeskyFactor { lower, dim: p })
    }
}

/// Lower-triangular Cholesky factor of an [`SpdMatrix`].
#[derive(Debug, Clone, PartialEq)]
pub struct CholeskyFactor {
    lower: Vec<f64>,
    dim: usize,
}

impl CholeskyFactor {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.lower[i * self.dim + j]
    }

    /// `log det A = 2 Σ log L_ii`.
    pub fn log_det(&self) -> f64 {
        2.0 * (0..self.dim).map(|i| self.get(i, i).ln()).sum::<f64>()
    }

    /// `L v`.
    pub fn lower_mul(&self, v: &[f64]) -> Vec<f64> {
        (0..self.dim)
            .map(|i| {
                let row = &self.lower[i * self.dim..i * self.dim + i + 1];
                row.iter().zip(v).map(|(a, b)| a * b).sum()
            })
            .collect()
    }

    /// Solves `L w = b` by forward substitution.
    pub fn solve_lower(&self, b: &[f64]) -> Vec<f64> {
        let p = self.dim;
        let mut w = b.to_vec();
        for i in 0..p {
            let row = &self.lower[i * p..i * p + i];
            let v = row.iter().zip(&w[..i]).fold(w[i], |v, (l, x)| v - l * x);
            w[i] = v / self.lower[i * p + i];
        }
        w
    }

    /// Solves `Lᵀ z = w` by back substitution.
    pub fn solve_upper(&self, w: &[f64]) -> Vec<f64> {
        let p = self.dim;
        let mut z = w.to_vec();
        for i in (0..p).rev() {
            let v = (i + 1..p)
                .zip(&z[i + 1..])
                .fold(z[i], |v, (k, x)| v - self.lower[k * p + i] * x);
            z[i] = v / self.lower[i * p + i];
        }
        z
    }

    /// `vᵀ A⁻¹ v = |L⁻¹ v|²`.
    pub fn quad_form(&self, v: &[f64]) -> Result<f64> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: v.len(),
            });
        }
        Ok(self.solve_lower(v).iter().map(|w| w * w).sum())
    }

    /// `tr(A⁻¹ B)`, one pair of triangular solves per column of `B`.
    pub fn trace_inv_times(&self, b: &SpdMatrix) -> Result<f64> {
        let p = self.dim;
        if b.dim() != p {
            return Err(Error::DimensionMismatch {
                left: p,
                right: b.dim(),
            });
        }
        let mut trace = 0.0;
        let mut column = vec![0.0; p];
        for j in 0..p {
            for (i, c) in column.iter_mut().enumerate() {
                *c = b.get(i, j);
            }
            let z = self.solve_upper(&self.solve_lower(&column));
            trace += z[j];
        }
        Ok(trace)
    }
}

/// `Σ̂ = (1/n) Σ_k (X_k − X̄)(X_k − X̄)ᵀ` with `n = N − 1`.
pub fn sample_covariance(x: &SampleMatrix) -> Result<(SpdMatrix, ModelDims)> {
    let mean = x.column_means();
    let n = x.rows() - 1;
    let cov = scatter(x, &mean, n as f64)?;
    Ok((cov, ModelDims { n, p: x.cols() }))
}

/// Known-mean variant: `(1/N) Σ_k (X_k − μ)(X_k − μ)ᵀ`, no centering at
/// the sample mean. Degrees of freedom are `N`.
pub fn sample_covariance_known_mean(
    x: &SampleMatrix,
    mean: &[f64],
) -> Result<(SpdMatrix, ModelDims)> {
    if mean.len() != x.cols() {
        return Err(Error::DimensionMismatch {
            left: x.cols(),
            right: mean.len(),
        });
    }
    let n = x.rows();
    let cov = scatter(x, mean, n as f64)?;
    Ok((cov, ModelDims { n, p: x.cols() }))
}

fn scatter(x: &SampleMatrix, center: &[f64], divisor: f64) -> Result<SpdMatrix> {
    let p = x.cols();
    let mut acc = vec![0.0; p * p];
    let mut dev = vec![0.0; p];
    for r in 0..x.rows() {
        for ((d, v), m) in dev.iter_mut().zip(x.row(r)).zip(center) {
            *d = v - m;
        }
        for i in 0..p {
            let di = dev[i];
            let row = &mut acc[i * p..i * p + i + 1];
            for (a, dj) in row.iter_mut().zip(&dev) {
                *a += di * dj;
            }
        }
    }
    let inv = 1.0 / divisor;
    for i in 0..p {
        for j in 0..=i {
            let v = acc[i * p + j] * inv;
            acc[i * p + j] = v;
            acc[j * p + i] = v;
        }
    }
    SpdMatrix::symmetrized(p, acc)
}

/// `log det A` from the Cholesky factor; fails on a non-positive pivot.
pub fn cholesky_log_det(a: &SpdMatrix) -> Result<f64> {
    Ok(a.cholesky()?.log_det())
}

/// Population covariance families used by the simulator and the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum CovSpec {
    Identity,
    /// `a · I`
    Diag(f64),
    /// Toeplitz `Σ_ij = ρ^|i−j|`
    Ar(f64),
    /// `AᵀA / p + 0.1 I` with `A` standard normal drawn from `seed`.
    Random(u64),
}

impl fmt::Display for CovSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CovSpec::Identity => write!(f, "identity"),
            CovSpec::Diag(a) => write!(f, "diag:{a}"),
            CovSpec::Ar(rho) => write!(f, "ar:{rho}"),
            CovSpec::Random(seed) => write!(f, "random:{seed}"),
        }
    }
}

impl FromStr for CovSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, arg) = match s.split_once(':') {
            Some((k, a)) => (k, Some(a)),
            None => (s, None),
        };
        let number = |field: &'static str| -> Result<f64> {
            arg.ok_or_else(|| Error::InvalidSpec {
                field,
                message: "missing value".into(),
            })?
            .parse::<f64>()
            .map_err(|e| Error::InvalidSpec {
                field,
                message: e.to_string(),
            })
        };
        let spec = match (kind, arg) {
            ("identity", None) => CovSpec::Identity,
            ("diag", _) => CovSpec::Diag(number("diag")?),
            ("ar", _) => CovSpec::Ar(number("rho")?),
            ("random", _) => CovSpec::Random(
                arg.ok_or_else(|| Error::InvalidSpec {
                    field: "seed",
                    message: "missing value".into(),
                })?
                .parse::<u64>()
                .map_err(|e| Error::InvalidSpec {
                    field: "seed",
                    message: e.to_string(),
                })?,
            ),
            _ => {
                return Err(Error::InvalidSpec {
                    field: "kind",
                    message: format!(
                        "unknown spec `{s}`, expected identity, diag:a, ar:rho or random:seed"
                    ),
                })
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl CovSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            CovSpec::Diag(a) if !(a > 0.0 && a.is_finite()) => Err(Error::InvalidSpec {
                field: "diag",
                message: format!("diagonal value must be positive, got {a}"),
            }),
            CovSpec::Ar(rho) if !(rho > -1.0 && rho < 1.0) => Err(Error::InvalidSpec {
                field: "rho",
                message: format!("AR parameter must lie in (-1, 1), got {rho}"),
            }),
            _ => Ok(()),
        }
    }
}

/// Materializes a [`CovSpec`] at dimension `p`.
pub fn make_spd_from_spec(spec: &CovSpec, p: usize) -> Result<SpdMatrix> {
    if p == 0 {
        return Err(Error::InvalidSpec {
            field: "dimension",
            message: "dimension must be at least 1".into(),
        });
    }
    spec.validate()?;
    let m = match *spec {
        CovSpec::Identity => SpdMatrix::identity(p),
        CovSpec::Diag(a) => SpdMatrix::diagonal(&vec![a; p]),
        CovSpec::Ar(rho) => {
            let mut e = vec![0.0; p * p];
            for i in 0..p {
                for j in 0..p {
                    e[i * p + j] = rho.powi(i.abs_diff(j) as i32);
                }
            }
            SpdMatrix::new(p, e)?
        }
        CovSpec::Random(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a: Vec<f64> = (0..p * p)
                .map(|_| StandardNormal.sample(&mut rng))
                .collect();
            let mut e = vec![0.0; p * p];
            for i in 0..p {
                for j in 0..=i {
                    let dot: f64 = (0..p).map(|k| a[k * p + i] * a[k * p + j]).sum();
                    let v = dot / p as f64 + if i == j { 0.1 } else { 0.0 };
                    e[i * p + j] = v;
                    e[j * p + i] = v;
                }
            }
            SpdMatrix::new(p, e)?
        }
    };
    Ok(m)
}
