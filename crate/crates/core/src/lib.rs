//! Numerical toolkit for the most general spin-1/2 representations of the
//! 8-vertex reflection algebra (open XYZ chains with non-diagonal boundaries).
//!
//! The crate builds the elliptic R- and K-matrices, boundary monodromy
//! matrices and transfer matrices, Baxter's gauge transformations, the left
//! and right separation-of-variables (SOV) bases, and characterizes the full
//! transfer-matrix spectrum through an inhomogeneous system of quadratic
//! equations. Every algebraic identity used along the way can be machine
//! checked against dense-matrix arithmetic at small chain length.
//!
//! The crate is `no_std` (with `alloc`); all IO, configuration and report
//! emission live in the companion CLI crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod check;
pub mod elliptic;
pub mod gauge;
pub mod linalg;
pub mod rng;
pub mod scalar;
pub mod sov;
pub mod spectrum;
pub mod vertex;

pub use num_complex::Complex64 as C64;

use core::fmt;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Theta index outside 1..=4.
    InvalidThetaIndex(u8),
    /// Nome |e^{i pi w}| too close to 1 (or Im w <= 0).
    NonConvergentNome,
    /// Argument too far from the fundamental cell for accurate summation.
    ArgumentRange,
    /// Interpolation nodes coincide modulo the periods.
    CoincidentNodes,
    /// Interpolation normalization theta vanishes.
    DegenerateNorm,
    /// A theta denominator vanished (pole of the requested quantity).
    Pole(&'static str),
    /// Model parameters violate the SOV genericity condition.
    EsovViolation,
    /// Gauge frame hit a zero of a required theta denominator.
    DegenerateGauge(&'static str),
    /// A quantity expected to be a multiple of the identity is not.
    CentralityViolation,
    /// Cross-check between two routes to the same number failed.
    Inconsistency(&'static str),
    /// Newton iteration failed to converge.
    NewtonFailure(&'static str),
    /// Gauge frame rejected by a nondegeneracy condition.
    FrameRejected(&'static str),
    /// SOV basis is numerically rank deficient.
    SovDegeneracy,
    /// Rank-1 condition of the spectrum theorem violated at a node.
    RankCondition,
    /// States built in different gauge frames were combined.
    FrameMismatch,
    /// Linear-algebra breakdown (singular matrix, QR non-convergence).
    Linalg(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidThetaIndex(a) => write!(f, "theta index {a} outside 1..=4"),
            Error::NonConvergentNome => write!(f, "nome outside convergence region"),
            Error::ArgumentRange => write!(f, "argument too far from the fundamental cell"),
            Error::CoincidentNodes => write!(f, "interpolation nodes coincide"),
            Error::DegenerateNorm => write!(f, "interpolation normalization theta vanishes"),
            Error::Pole(what) => write!(f, "pole encountered in {what}"),
            Error::EsovViolation => write!(f, "inhomogeneities violate the SOV genericity condition"),
            Error::DegenerateGauge(what) => write!(f, "degenerate gauge: {what}"),
            Error::CentralityViolation => write!(f, "operator is not a scalar multiple of the identity"),
            Error::Inconsistency(what) => write!(f, "cross-check mismatch: {what}"),
            Error::NewtonFailure(what) => write!(f, "newton iteration failed: {what}"),
            Error::FrameRejected(what) => write!(f, "gauge frame rejected: {what}"),
            Error::SovDegeneracy => write!(f, "SOV basis is rank deficient"),
            Error::RankCondition => write!(f, "rank-1 condition violated at an SOV node"),
            Error::FrameMismatch => write!(f, "states belong to different gauge frames"),
            Error::Linalg(what) => write!(f, "linear algebra failure: {what}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
