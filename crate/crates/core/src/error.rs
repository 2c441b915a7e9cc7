use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid configuration value; the message names the offending field.
    #[error("configuration error: {0}")]
    Config(String),

    /// Network / data shape inconsistency.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// A closed-form design could not be calibrated to the requested grid.
    #[error("design infeasible: {0}")]
    DesignInfeasible(String),

    /// Non-finite loss encountered during training.
    #[error("training diverged at epoch {epoch}: loss = {loss}")]
    Diverged { epoch: usize, loss: f64 },

    /// Rejection sampling exceeded its defect-guard iteration budget.
    #[error("parameter sampling failed: {0}")]
    Sampling(String),

    #[error("unknown {kind} '{name}' (known: {known})")]
    UnknownName {
        kind: &'static str,
        name: String,
        known: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    /// Malformed on-disk artifact (dataset, snapshot, manifest).
    #[error("invalid artifact {path}: {reason}")]
    Artifact { path: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }
}
