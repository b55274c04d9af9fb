//! Error types shared across the crate.

use thiserror::Error;

/// Unified error type for model construction, evolution, and I/O.
#[derive(Debug, Error)]
pub enum TcdynError {
    /// Parameters outside the domain a routine is defined on.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// Scenario configuration rejected before any computation ran.
    #[error("config error: {0}")]
    Config(String),

    /// Strict mode refused parameters outside the requested engines' regime.
    #[error("strict mode violation: {0}")]
    Strict(String),

    /// Truncated Fock space too small for the requested state.
    #[error("fock truncation insufficient: norm deficit {deficit:.3e} at n_max = {n_max}")]
    Truncation { deficit: f64, n_max: usize },

    /// Reduced density matrix does not have the X sparsity pattern.
    #[error("density matrix is not X-shaped: off-pattern weight {0:.3e}")]
    NotXShaped(f64),

    /// The closed-form revival estimate degenerates (division by a
    /// vanishing Rabi-frequency gap).
    #[error("revival pushed beyond horizon: {0}")]
    RevivalOutOfRange(String),

    #[error("linear algebra failure: {0}")]
    Linalg(#[from] ndarray_linalg::error::LinalgError),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, TcdynError>;
