use thiserror::Error;

use crate::poisson::PhaseTrajectory;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("incompatible algebras: {left} vs {right}")]
    IncompatibleAlgebras { left: String, right: String },

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("coordinate vector has length {got}, expected {expected}")]
    CoordinateLength { expected: usize, got: usize },

    #[error("non-finite coordinate at index {0}")]
    NonFinite(usize),

    #[error("division by zero")]
    DivisionByZero,

    #[error("function is undefined at eigenvalue {0}")]
    Domain(f64),

    #[error("element is not positive (smallest eigenvalue {0:e})")]
    NotPositive(f64),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("linear map is not a derivation of the Jordan product (residual {0:e})")]
    NotADerivation(f64),

    #[error("operation requires a {expected} derivation")]
    WrongDerivationKind { expected: &'static str },

    #[error("no canonical correspondence exists for {0}")]
    NoCanonicalCorrespondence(String),

    #[error("invalid correspondence: {0}")]
    InvalidCorrespondence(String),

    #[error("unsupported algebra for this operation: {0}")]
    Unsupported(String),

    #[error("phase-space dimension mismatch: {left} vs {right} degrees of freedom")]
    PhaseDimension { left: usize, right: usize },

    #[error("polynomial parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("trajectory left the finite region at t = {t}")]
    BlowUp {
        t: f64,
        partial: Box<PhaseTrajectory>,
    },

    #[error("internal error: {0}")]
    Internal(String),
}
