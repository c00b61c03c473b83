//! Error type shared by all library operations.

use thiserror::Error;

/// Failure modes of the library.
///
/// `Domain` and `Regime` signal misuse detectable from the arguments alone;
/// `Numerical` signals an iterative procedure that failed to reach its
/// tolerance; `Config` signals an invalid model description; `Singularity`
/// and `Pole` mark evaluations at points where the requested quantity
/// genuinely diverges.
#[derive(Debug, Clone, Error)]
pub enum SalpeterError {
    /// Argument outside the mathematical domain of the operation.
    #[error("domain error in {op}: {msg}")]
    Domain { op: &'static str, msg: String },

    /// Operation invoked in a physical regime it does not cover.
    #[error("regime error in {op}: {msg}")]
    Regime { op: &'static str, msg: String },

    /// An iterative numerical procedure failed to converge.
    #[error("numerical failure in {op}: {msg}")]
    Numerical { op: &'static str, msg: String },

    /// Model configuration violates an invariant.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// Wave function requested exactly at a delta center, where it diverges.
    #[error("wave function is singular at x = {x}: coincides with center {index}")]
    Singularity { x: f64, index: usize },

    /// Coupling flow crossed its Landau pole.
    #[error("coupling flow diverges at scale ratio alpha = {critical_alpha:.12e}")]
    Pole { critical_alpha: f64 },
}

impl SalpeterError {
    /// Shorthand constructor for `Domain`.
    pub fn domain(op: &'static str, msg: impl Into<String>) -> Self {
        SalpeterError::Domain { op, msg: msg.into() }
    }

    /// Shorthand constructor for `Regime`.
    pub fn regime(op: &'static str, msg: impl Into<String>) -> Self {
        SalpeterError::Regime { op, msg: msg.into() }
    }

    /// Shorthand constructor for `Numerical`.
    pub fn numerical(op: &'static str, msg: impl Into<String>) -> Self {
        SalpeterError::Numerical { op, msg: msg.into() }
    }
}
