//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by algebra construction, enumeration and form evaluation.
#[derive(Debug, Error)]
pub enum Error {
    /// A functional was asked to evaluate a generator it does not assign.
    #[error("missing assignment for Cartan generator {gen}")]
    MissingAssignment { gen: String },

    /// A weight outside the positive root lattice was passed where Q+ membership is required.
    #[error("weight {chi} is not in the positive root lattice")]
    WeightNotPositive { chi: String },

    /// The root is not a positive root of the algebra.
    #[error("{alpha} is not a positive root")]
    NotAPositiveRoot { alpha: String },

    /// An algebra axiom failed during load-time validation.
    #[error("algebra validation failed: {axiom} (witness: {witness})")]
    Validation { axiom: String, witness: String },

    /// Malformed input data (weight strings, JSON tables, functionals).
    #[error("invalid input: {0}")]
    Parse(String),

    /// Mismatched arguments to a bilinear-form operation.
    #[error("{0}")]
    FormArgument(String),

    /// Operation is not defined for this algebra.
    #[error("unsupported for algebra {algebra}: {reason}")]
    Unsupported { algebra: String, reason: String },

    /// Internal consistency failure; indicates a bug, not bad input.
    #[error("internal invariant broken: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
