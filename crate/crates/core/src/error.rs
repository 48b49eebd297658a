use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("non-finite value encountered: {0}")]
    Numerical(String),

    #[error("no convergence after {iterations} iterations (best value {best_value})")]
    Convergence {
        iterations: usize,
        best_point: Vec<f64>,
        best_value: f64,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("sampled squares change sign; the subspace is not definite")]
    ConstantSign,

    #[error("orthogonal companion is degenerate: the functional vanishes")]
    Degenerate,

    #[error("neutral pivot at index {index}: leading Gram determinant is zero")]
    NeutralPivot { index: usize },

    #[error("vector is not tangent to the hyperboloid (residual {residual:e})")]
    Tangent { residual: f64 },

    #[error("path leaves the space-like regime (radicand {radicand:e} at t = {t})")]
    Path { radicand: f64, t: f64 },

    #[error("linear map is singular (det = {det:e})")]
    SingularMap { det: f64 },

    #[error("invalid norm specification: {0}")]
    InvalidNorm(String),

    #[error("config error at line {line}, column {column}: {message}")]
    Config {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("usage: {0}")]
    Usage(String),
}

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::Dimension { expected, got })
    }
}
