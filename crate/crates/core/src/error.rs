use thiserror::Error;

/// Errors produced by state construction, feasibility checks, and machine synthesis.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("{name} out of range: {value} (expected {expected})")]
    OutOfRange {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("state is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("matrix is not Hermitian (max conjugate-symmetry deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not unitary (residual operator norm {residual:.3e})")]
    NotUnitary { residual: f64 },

    #[error("prescribed map does not preserve inner products (max Gram deviation {deviation:.3e})")]
    GramMismatch { deviation: f64 },

    #[error("prescribed inputs are linearly dependent (smallest singular value {smallest_singular_value:.3e})")]
    DegenerateInputs { smallest_singular_value: f64 },

    #[error("average-rate bound is singular: output overlap is 1 while input overlap is {eta_in}")]
    SingularBound { eta_in: f64 },

    #[error("unequal priors ({p1}, {p2}) are not supported by this closed form; rerun with equal priors or use the grid oracle")]
    UnsupportedPriors { p1: f64, p2: f64 },

    #[error("rates ({r1}, {r2}) are infeasible for overlaps eta_in={eta_in}, eta_out={eta_out}")]
    InfeasibleRates {
        r1: f64,
        r2: f64,
        eta_in: f64,
        eta_out: f64,
    },

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
