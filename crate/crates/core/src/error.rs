//! Error taxonomy shared by all solver and verification modules.
//!
//! The variants map onto the process exit codes used by the CLI: config
//! problems (3), numerical-accuracy problems (4) and everything that makes a
//! check fail rather than crash (2).

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum CoreError {
    /// Argument outside the supported evaluation range.
    #[error("out of supported range: {0}")]
    Range(String),

    /// NaN/infinite input or structurally invalid argument.
    #[error("invalid input: {0}")]
    Input(String),

    /// Evaluation at a singular point (e.g. K_n at z = 0).
    #[error("singular evaluation point: {0}")]
    Singularity(String),

    /// The spectral-parameter regime does not admit the requested problem.
    #[error("regime violation: {0}")]
    Regime(String),

    /// A compatibility condition on the data fails (e.g. nonzero mean where a
    /// zero mean is required).
    #[error("data compatibility violation: {0}")]
    Compatibility(String),

    /// Quadrature failed to reach the requested relative accuracy.
    #[error("quadrature accuracy failure: last relative change {last_change:.3e} after {nodes} nodes")]
    Accuracy { last_change: f64, nodes: usize },

    /// A grid-oracle truncation bound is violated; carries the bound value.
    #[error("truncation bound violated: tail estimate {bound:.3e} exceeds budget {budget:.3e}")]
    Truncation { bound: f64, budget: f64 },

    /// The requested norm is not computable for this solution type.
    #[error("unsupported norm for this solution: {0}")]
    Capability(String),

    /// Degenerate input that makes the requested quotient meaningless.
    #[error("degenerate input: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
