use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("algebra spec failed validation: {0}")]
    InvalidSpec(String),

    #[error("weight is not dominant integral: {0}")]
    NotDominant(String),

    #[error("degenerate root order: root {root} evaluates to {value:e} on the ordering element")]
    DegenerateOrder { root: usize, value: f64 },

    #[error("no convergence after {sweeps} sweeps (residual {residual:e})")]
    NoConvergence { residual: f64, sweeps: usize },

    #[error("matrix is not positive definite (min eigenvalue {min_eigenvalue:e}{})", t.map(|t| format!(", t = {t}")).unwrap_or_default())]
    NotPositiveDefinite { min_eigenvalue: f64, t: Option<f64> },

    #[error("matrix norm {norm:e} exceeds exponential bound {bound:e}")]
    Overflow { norm: f64, bound: f64 },

    #[error("conjugated matrix leaves the span of the basis images (residual {residual:e} > {tol:e})")]
    ExpansionResidual { residual: f64, tol: f64 },

    #[error("correlation order {q} exceeds cap {cap}")]
    OrderCapExceeded { q: usize, cap: usize },

    #[error("normal ordering produced {terms} terms, above the limit {limit}")]
    TermLimit { terms: u64, limit: u64 },

    #[error("dimension guard: n = {n} exceeds {max}")]
    DimensionGuard { n: usize, max: usize },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Exit code used by the command line front end: 1 for domain errors, 2 for
    /// usage and parse errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Json(_) | Error::Io(_) | Error::Shape(_) => 2,
            _ => 1,
        }
    }
}
