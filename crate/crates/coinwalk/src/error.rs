//! Crate-wide error type.

use thiserror::Error;

/// Errors raised by construction, evolution, and verification routines.
#[derive(Debug, Clone, Error)]
pub enum WalkError {
    /// A parameter violates a precondition: non-unit axis, non-unitary
    /// matrix, zero-norm state factor, malformed spec string, bad sizes.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A shift would push amplitude past the edge of a padded array.
    #[error("guard violation: {0}")]
    GuardViolation(String),

    /// Quasi-momentum shift on a ring whose phase is not commensurate,
    /// i.e. Φ·L is not a multiple of 2π.
    #[error("incommensurate ring phase: {0}")]
    IncommensurateRingPhase(String),

    /// A dense-matrix request beyond the supported size.
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    /// Internal consistency tripwire, e.g. norm drift beyond 1e-8.
    /// Indicates a bug in this crate, not bad input.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, WalkError>;
