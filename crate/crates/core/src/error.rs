//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Polynomial or rational text did not conform to the input grammar.
    #[error("syntax error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("zero polynomial has no cyclotomic factorization")]
    ZeroPolynomial,

    #[error("invalid product spec: {0}")]
    InvalidProductSpec(String),

    #[error("series inverse requires constant term 1, got {0}")]
    InverseConstantTerm(String),

    #[error("decimation residue {b} out of range for q^l = {modulus}")]
    DecimationOutOfRange { b: u64, modulus: u64 },

    #[error("decimation base must satisfy q >= 2, got {0}")]
    DecimationBase(u32),

    #[error("recurrence requires a non-constant polynomial")]
    ConstantPolynomial,

    #[error("window width {requested} is below the minimal closed width {minimal}")]
    WindowTooSmall { requested: usize, minimal: usize },

    #[error("semigroup cap {cap} is below the generator count {q}")]
    CapTooSmall { cap: usize, q: u32 },

    #[error("operation requires a finite semigroup closure, got CapExceeded")]
    ClosureNotFinite,

    #[error("transition system failed self-validation at n = {0}")]
    SelfValidation(u64),

    #[error("series order {order} too small, need at least {needed}")]
    InsufficientOrder { order: usize, needed: usize },

    #[error("no functional equation found within the given order and degree bounds")]
    EquationNotFound,

    #[error("invalid functional equation: {0}")]
    InvalidEquation(String),

    #[error("malformed JSON input: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
