//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the toolkit.
///
/// The variants are deliberately coarse: callers (in particular the CLI)
/// dispatch on the variant, while the message carries the specifics.
#[derive(Debug, Error)]
pub enum Error {
    /// The input violates a documented precondition (malformed edge,
    /// out-of-range parameter, negative `delta`, and so on).
    #[error("invalid input: {0}")]
    Input(String),

    /// An enumeration would exceed a hard cap (set-partition enumeration
    /// past the vertex cap, more minimal transversals than the result cap).
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// A bounded search exhausted its node budget before reaching a
    /// conclusion. Distinct from a negative answer.
    #[error("search budget exhausted: {0}")]
    Budget(String),

    /// The finite-n variational solver found no feasible point. Carries the
    /// best (infeasible) iterate so callers can inspect how close it came.
    #[error("no feasible point: {message}")]
    NmfInfeasible {
        message: String,
        best: Box<crate::density::NmfSolution>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
