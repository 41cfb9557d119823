use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{function}: argument {value} outside domain, expected {expected}")]
    Domain {
        function: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("invalid dimensions n = {n}, p = {p}: {reason}")]
    Dims {
        n: usize,
        p: usize,
        reason: &'static str,
    },

    /// A Cholesky pivot was non-positive or non-finite.
    #[error("matrix is singular or not positive definite (pivot {index} = {pivot}){}", context_suffix(.context))]
    SingularOrNotPd {
        index: usize,
        pivot: f64,
        context: Option<String>,
    },

    #[error("invalid covariance spec: field `{field}`: {message}")]
    InvalidSpec {
        field: &'static str,
        message: String,
    },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid simulation config: {0}")]
    Config(String),
}

fn context_suffix(context: &Option<String>) -> String {
    match context {
        Some(c) => format!("; {c}"),
        None => String::new(),
    }
}

impl Error {
    /// Attaches an explanation to a `SingularOrNotPd` error; other variants
    /// pass through.
    pub fn with_pd_context(self, message: impl Into<String>) -> Self {
        match self {
            Error::SingularOrNotPd { index, pivot, .. } => Error::SingularOrNotPd {
                index,
                pivot,
                context: Some(message.into()),
            },
            other => other,
        }
    }
}
