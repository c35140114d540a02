//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by gate construction, state evolution and statistics.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// A neuron or basis-state index outside the valid range.
    #[error("index {index} out of range (expected < {bound})")]
    IndexOutOfRange { index: usize, bound: usize },

    /// A rotation axis whose Euclidean norm is not 1.
    #[error("rotation axis has norm {norm}, expected a unit vector")]
    NonUnitAxis { norm: f64 },

    /// A matrix that fails the unitarity check.
    #[error("matrix is not unitary (max deviation of U\u{2020}U from identity: {defect:e})")]
    NonUnitary { defect: f64 },

    /// A conditional gate spec with no gate for some control pattern.
    #[error("no gate assigned to control pattern {pattern:?}")]
    MissingControlPattern { pattern: Vec<u8> },

    /// A conditional gate spec with a gate keyed by an invalid pattern.
    #[error("control pattern {pattern:?} does not match the declared controls")]
    InvalidControlPattern { pattern: Vec<u8> },

    /// A conditional gate spec whose target/control indices are invalid.
    #[error("invalid gate wiring: {reason}")]
    InvalidWiring { reason: String },

    /// A state vector or probability vector that is not normalized.
    #[error("state is not normalized (total weight {total})")]
    NotNormalized { total: f64 },

    /// An ensemble with no members.
    #[error("ensemble must contain at least one member")]
    EmptyEnsemble,

    /// A sampled bit vector whose length disagrees with the component count.
    #[error("expected {expected} component bits, got {actual}")]
    ComponentCountMismatch { expected: usize, actual: usize },

    /// A market configuration that violates a parameter constraint.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// Too few observations for the requested statistic.
    #[error("statistic requires at least {required} observations, got {n}")]
    InsufficientData { n: usize, required: usize },

    /// A statistic that is undefined because the series has zero variance.
    #[error("statistic undefined for a constant series (zero variance)")]
    ZeroVariance,
}
