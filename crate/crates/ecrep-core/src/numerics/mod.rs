//! Precision management, extended-precision scalars, and the handful of
//! number-theoretic primitives everything else builds on.
//!
//! The central type is [`PrecisionContext`]: a working precision in bits plus
//! a fixed guard margin. An operation that promises results "within epsilon"
//! means within `2^-(bits - guard_bits)` — the guard bits absorb rounding
//! accumulation so the promise survives long summations.

mod complex;
mod real;

pub use complex::{UnitPowers, XComplex, RENORM_INTERVAL};
pub use real::XReal;

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complete, Float, Integer, Rational};

use crate::error::{Error, Result};

/// Lowest working precision the crate supports.
pub const MIN_BITS: u32 = 64;

/// Guard bits reserved on top of the advertised accuracy.
pub const GUARD_BITS: u32 = 32;

/// Working precision plus guard margin; the capability handle passed to every
/// numerical routine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionContext {
    bits: u32,
    guard_bits: u32,
}

/// Builds a context at `bits` of working precision.
///
/// Fails with [`Error::PrecisionTooLow`] below [`MIN_BITS`].
pub fn make_context(bits: u32) -> Result<PrecisionContext> {
    if bits < MIN_BITS {
        return Err(Error::PrecisionTooLow { requested: bits, minimum: MIN_BITS });
    }
    Ok(PrecisionContext { bits, guard_bits: GUARD_BITS })
}

impl PrecisionContext {
    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn guard_bits(&self) -> u32 {
        self.guard_bits
    }

    /// `2^-(bits - guard_bits)`, the accuracy this context advertises.
    pub fn epsilon(&self) -> XReal {
        XReal::from_i64(self.bits, 1).scale2(-((self.bits - self.guard_bits) as i32))
    }

    pub fn zero(&self) -> XReal {
        XReal::zero(self.bits)
    }

    pub fn one(&self) -> XReal {
        XReal::from_i64(self.bits, 1)
    }

    pub fn real_i(&self, v: i64) -> XReal {
        XReal::from_i64(self.bits, v)
    }

    pub fn real_u(&self, v: u64) -> XReal {
        XReal::from_u64(self.bits, v)
    }

    pub fn real_from_integer(&self, v: &Integer) -> XReal {
        XReal::from_integer(self.bits, v)
    }

    pub fn real_from_rational(&self, v: &Rational) -> XReal {
        XReal::from_rational(self.bits, v)
    }

    /// `num/den` with a single rounding.
    pub fn ratio(&self, num: i64, den: u64) -> XReal {
        XReal::from_ratio(self.bits, num, den)
    }

    pub fn pi(&self) -> XReal {
        XReal::from_float(Float::with_val(self.bits, Constant::Pi))
    }
}

/// `e^(2πit)` as a point on the unit circle.
///
/// The argument reduction for huge `t` happens inside MPFR's sine/cosine, so
/// the result stays within a few ulps of the circle for any finite `t`.
pub fn unit_exp(t: &XReal, ctx: &PrecisionContext) -> XComplex {
    unit_exp_raw(t, ctx.bits)
}

pub(crate) fn unit_exp_raw(t: &XReal, prec: u32) -> XComplex {
    let two_pi = XReal::from_float(Float::with_val(prec, Constant::Pi)).scale2(1);
    let theta = two_pi * t.with_prec(prec);
    let (sin, cos) = theta.sin_cos();
    XComplex::new(cos, sin)
}

/// Smallest `2^k >= num/den` as a signed exponent.
fn ceil_log2_ratio(num: &Integer, den: &Integer) -> i64 {
    debug_assert!(*num > 0 && *den > 0);
    // Initial guess from bit lengths, then correct by exact comparison.
    let mut k = num.significant_bits() as i64 - den.significant_bits() as i64 + 1;
    let holds = |k: i64| -> bool {
        // 2^k * den >= num, evaluated without negative shifts.
        if k >= 0 {
            (den.clone() << k as u32) >= *num
        } else {
            *den >= (num.clone() << (-k) as u32)
        }
    };
    while holds(k - 1) {
        k -= 1;
    }
    while !holds(k) {
        k += 1;
    }
    k
}

/// Precision needed so that a value raised to `max_power` stays within
/// `target_eps` of its exact counterpart: `ceil(log2(max_power/target_eps))`
/// plus the guard margin, floored at [`MIN_BITS`].
pub fn required_bits(max_power: u64, target_eps: &XReal) -> Result<u32> {
    if max_power == 0 {
        return Err(Error::DomainError { what: "required_bits: max_power must be >= 1".into() });
    }
    if !target_eps.is_finite() || *target_eps <= 0 || !(target_eps < &XReal::from_i64(64, 1)) {
        return Err(Error::DomainError {
            what: "required_bits: target_eps must satisfy 0 < eps < 1".into(),
        });
    }
    let eps = target_eps.to_rational().expect("finite value is rational");
    // max_power / eps as an exact rational.
    let q = Rational::from(max_power) / eps;
    let (num, den) = q.into_numer_denom();
    let k = ceil_log2_ratio(&num, &den);
    let bits = k + GUARD_BITS as i64;
    Ok(bits.max(MIN_BITS as i64) as u32)
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    let mul_mod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow_mod = |mut base: u64, mut e: u64| {
        let mut acc = 1u64;
        base %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(acc, base);
            }
            base = mul_mod(base, base);
            e >>= 1;
        }
        acc
    };
    // This base set decides primality exactly for all n < 3.3 * 10^24.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Legendre symbol `(n/p)` via Euler's criterion.
///
/// `p` must be an odd prime; an even or tiny modulus is rejected up front,
/// and a composite odd modulus is caught when the criterion produces a value
/// other than `0, 1, p-1`.
pub fn legendre_symbol(n: &Integer, p: u64) -> Result<i32> {
    if p < 3 {
        return Err(Error::InvalidModulus { p, reason: "modulus must be at least 3" });
    }
    if p % 2 == 0 {
        return Err(Error::InvalidModulus { p, reason: "modulus must be odd" });
    }
    let pz = Integer::from(p);
    let e = Integer::from((p - 1) / 2);
    let r = n
        .clone()
        .pow_mod(&e, &pz)
        .map_err(|_| Error::InvalidModulus { p, reason: "exponentiation rejected modulus" })?;
    if r == 0 {
        Ok(0)
    } else if r == 1 {
        Ok(1)
    } else if (&r + 1u32).complete() == pz {
        Ok(-1)
    } else {
        Err(Error::InvalidModulus { p, reason: "modulus is not prime" })
    }
}

/// Parameters of `y^2 = x^3 + ax + b` over the integers mod `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveParams {
    pub a: Integer,
    pub b: Integer,
    pub p: u64,
}

impl CurveParams {
    pub fn new<A: Into<Integer>, B: Into<Integer>>(a: A, b: B, p: u64) -> Self {
        CurveParams { a: a.into(), b: b.into(), p }
    }

    /// `4a^3 + 27b^2` over the integers (not reduced mod p).
    pub fn discriminant_quantity(&self) -> Integer {
        let a3 = self.a.clone().pow(3u32) * 4u32;
        let b2 = self.b.clone().square() * 27u32;
        a3 + b2
    }
}

impl std::fmt::Display for CurveParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "y^2 = x^3 + {}x + {} mod {}", self.a, self.b, self.p)
    }
}
