use thiserror::Error;

/// Errors produced by operator construction and the reduction pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit count mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("register of {0} qubits exceeds the {max} qubit limit", max = crate::pauli::MAX_QUBITS)]
    TooManyQubits(usize),

    #[error("mode index {index} out of range for {n_modes} modes")]
    ModeOutOfRange { index: usize, n_modes: usize },

    #[error("unsupported symmetry: {0} (only diagonal N and Sz projections are implemented)")]
    UnsupportedSymmetry(String),

    #[error(
        "target operator is not in the span of the projected candidates (residual {residual:.3e})"
    )]
    TargetNotInSpan { residual: f64 },

    #[error("operator supports differ: {0}")]
    SupportMismatch(String),

    #[error("scaling fit needs at least 3 positive points, got {0}")]
    BadFitInput(usize),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
