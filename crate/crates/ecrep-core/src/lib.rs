//! Exponential-sum point counting for elliptic curves over prime fields,
//! with numerically certified series identities.
//!
//! The crate counts solutions of `y^2 = x^3 + ax + b (mod p)` four ways —
//! exact enumeration, Legendre-symbol summation, a quadratic Gauss-sum
//! expansion, and split-range rational approximations of unit-circle
//! exponentials — and cross-certifies them against each other at extended
//! precision. Alongside the counting core it ships the special-function
//! toolkit those representations need (zeta values at integers, Bernoulli
//! numbers, an auxiliary telescoping series with closed forms) and
//! verification suites that measure every agreement instead of assuming it.
//!
//! Everything numerical flows through a [`numerics::PrecisionContext`]; all
//! routines are deterministic for a fixed context, including the parallel
//! ones, which combine fixed-size chunks in a fixed order regardless of
//! worker count.

pub mod counting;
pub mod error;
pub mod exec;
pub mod fracpart;
pub mod identity;
pub mod numerics;
pub mod repr;
pub mod special;
pub mod verify;

pub use counting::{CountMethod, CountResult, DiscriminantClass, GaussSumValue};
pub use fracpart::FloorSumReport;
pub use identity::IdentityReport;
pub use error::{Error, Result};
pub use exec::ExecPolicy;
pub use numerics::{
    make_context, required_bits, unit_exp, CurveParams, PrecisionContext, XComplex, XReal,
};
pub use repr::{FracDecomposition, UnitPoint};
pub use special::SeriesDiagnostics;
pub use verify::{run_suites, CaseResult, SuiteOptions, SuiteReport};
