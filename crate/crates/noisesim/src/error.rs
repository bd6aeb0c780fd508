use thiserror::Error;

#[derive(Debug, Error)]
pub enum NoiseError {
    #[error("channel incomplete: max deviation of sum K^H K from identity is {defect:.3e}")]
    IncompleteChannel { defect: f64 },

    #[error("nonphysical parameter: {0}")]
    BadParameter(String),

    #[error("density matrix invariant violated: {0}")]
    BadState(String),

    #[error(transparent)]
    Core(#[from] spt_core::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, NoiseError>;
