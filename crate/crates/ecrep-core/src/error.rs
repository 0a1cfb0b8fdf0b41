//! Error taxonomy shared by every module in the crate.
//!
//! Errors are split roughly into three families: argument rejection
//! (`InvalidModulus`, `DomainError`, `UnsupportedArgument`, `SingularCurve`,
//! `AdmissibilityError`, `BranchError`), resource refusal (`PrecisionTooLow`,
//! `BudgetExceeded`) and after-the-fact certification failures
//! (`PrecisionExceeded`, `TruncationFailure`, `InvariantViolation`).

use std::fmt;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in the library.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// The requested working precision is below the supported floor, or below
    /// the floor a specific computation demands.
    PrecisionTooLow { requested: u32, minimum: u32 },
    /// The modulus does not satisfy the operation's requirements (wrong
    /// parity, too small, or composite where a prime is required).
    InvalidModulus { p: u64, reason: &'static str },
    /// An input lies outside the mathematical domain of the operation.
    DomainError { what: String },
    /// A truncated series did not reach its tolerance within the term budget.
    TruncationFailure { terms: u64, tail_bound: String },
    /// The argument is syntactically fine but the operation does not define a
    /// value for it.
    UnsupportedArgument { what: String },
    /// The curve is singular modulo p and the caller did not opt in.
    SingularCurve { p: u64 },
    /// A polynomial value exceeds the range the chosen representation can
    /// encode.
    AdmissibilityError { detail: String },
    /// The curve parameters fit neither parameter branch of the split-range
    /// counting method.
    BranchError { detail: String },
    /// A result failed its rounding certificate (the computed value is too
    /// far from the nearest admissible exact value).
    PrecisionExceeded { residual: String },
    /// The requested computation exceeds the operation's cost gate.
    BudgetExceeded { detail: String },
    /// A mathematically guaranteed invariant failed; indicates a bug.
    InvariantViolation { detail: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::PrecisionTooLow { requested, minimum } => {
                write!(f, "precision too low: {requested} bits requested, need at least {minimum}")
            }
            Error::InvalidModulus { p, reason } => write!(f, "invalid modulus {p}: {reason}"),
            Error::DomainError { what } => write!(f, "domain error: {what}"),
            Error::TruncationFailure { terms, tail_bound } => {
                write!(f, "series did not converge after {terms} terms (tail bound {tail_bound})")
            }
            Error::UnsupportedArgument { what } => write!(f, "unsupported argument: {what}"),
            Error::SingularCurve { p } => write!(f, "curve is singular mod {p}"),
            Error::AdmissibilityError { detail } => write!(f, "admissibility violation: {detail}"),
            Error::BranchError { detail } => write!(f, "parameters fit no branch: {detail}"),
            Error::PrecisionExceeded { residual } => {
                write!(f, "rounding certificate failed: residual {residual} is not below 1/2")
            }
            Error::BudgetExceeded { detail } => write!(f, "cost gate exceeded: {detail}"),
            Error::InvariantViolation { detail } => write!(f, "invariant violation: {detail}"),
        }
    }
}

impl std::error::Error for Error {}
