//! Extended-precision real numbers.
//!
//! [`XReal`] is a thin wrapper over an MPFR float. Every value carries its own
//! precision; binary operations round to the larger operand precision with
//! round-to-nearest, so a given expression tree evaluates to the same bits on
//! every run and every thread count.

use std::cmp::Ordering;
use std::fmt;

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

/// An arbitrary-precision real number with value-carried precision.
///
/// Construct values through
/// [`PrecisionContext`](crate::numerics::PrecisionContext) so the working
/// precision is threaded consistently; the raw constructors here are for
/// spots that already hold a precision.
#[derive(Debug, Clone, PartialEq)]
pub struct XReal(Float);

impl XReal {
    /// Wraps an existing float.
    pub(crate) fn from_float(f: Float) -> Self {
        XReal(f)
    }

    /// 0 at `prec` bits.
    pub fn zero(prec: u32) -> Self {
        XReal(Float::new(prec))
    }

    /// Signed integer value, exact (precision permitting).
    pub fn from_i64(prec: u32, v: i64) -> Self {
        XReal(Float::with_val(prec, v))
    }

    /// Unsigned integer value, exact (precision permitting).
    pub fn from_u64(prec: u32, v: u64) -> Self {
        XReal(Float::with_val(prec, v))
    }

    /// Rounds a big integer to `prec` bits.
    pub fn from_integer(prec: u32, v: &Integer) -> Self {
        XReal(Float::with_val(prec, v))
    }

    /// Rounds an exact rational to `prec` bits.
    pub fn from_rational(prec: u32, v: &Rational) -> Self {
        XReal(Float::with_val(prec, v))
    }

    /// Rounds `num/den` to `prec` bits (single rounding, not two).
    pub fn from_ratio(prec: u32, num: i64, den: u64) -> Self {
        let q = Rational::from((num, den));
        XReal(Float::with_val(prec, q))
    }

    pub fn from_f64(prec: u32, v: f64) -> Self {
        XReal(Float::with_val(prec, v))
    }

    /// Borrow the underlying float.
    pub(crate) fn inner(&self) -> &Float {
        &self.0
    }

    /// Precision of this value in bits.
    pub fn prec(&self) -> u32 {
        self.0.prec()
    }

    pub fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_sign_negative() && !self.0.is_zero()
    }

    pub fn abs(&self) -> XReal {
        XReal(Float::with_val(self.prec(), self.0.abs_ref()))
    }

    pub fn sqrt(&self) -> XReal {
        XReal(Float::with_val(self.prec(), self.0.sqrt_ref()))
    }

    pub fn recip(&self) -> XReal {
        XReal(Float::with_val(self.prec(), self.0.recip_ref()))
    }

    pub fn square(&self) -> XReal {
        XReal(Float::with_val(self.prec(), self.0.square_ref()))
    }

    pub fn ln(&self) -> XReal {
        XReal(Float::with_val(self.prec(), self.0.ln_ref()))
    }

    /// `ln(1 + self)`, accurate near zero.
    pub fn ln_1p(&self) -> XReal {
        XReal(Float::with_val(self.prec(), self.0.ln_1p_ref()))
    }

    pub fn exp(&self) -> XReal {
        XReal(Float::with_val(self.prec(), self.0.exp_ref()))
    }

    /// `exp(self) - 1`, accurate near zero.
    pub fn exp_m1(&self) -> XReal {
        XReal(Float::with_val(self.prec(), self.0.exp_m1_ref()))
    }

    pub fn sin(&self) -> XReal {
        XReal(Float::with_val(self.prec(), self.0.sin_ref()))
    }

    pub fn cos(&self) -> XReal {
        XReal(Float::with_val(self.prec(), self.0.cos_ref()))
    }

    /// Sine and cosine in one reduction pass.
    pub fn sin_cos(&self) -> (XReal, XReal) {
        let (s, c) = self.0.clone().sin_cos(Float::new(self.prec()));
        (XReal(s), XReal(c))
    }

    /// Natural log of the gamma function (argument must be positive).
    pub fn ln_gamma(&self) -> XReal {
        XReal(Float::with_val(self.prec(), self.0.ln_gamma_ref()))
    }

    /// Integer power with a single rounding.
    pub fn pow_i(&self, e: i64) -> XReal {
        XReal(Float::with_val(self.prec(), (&self.0).pow(e)))
    }

    /// Exact scaling by 2^e.
    pub fn scale2(&self, e: i32) -> XReal {
        let mut f = self.0.clone();
        if e >= 0 {
            f <<= e as u32;
        } else {
            f >>= (-e) as u32;
        }
        XReal(f)
    }

    pub fn floor(&self) -> XReal {
        XReal(Float::with_val(self.prec(), self.0.floor_ref()))
    }

    /// Nearest integer (ties away from zero, as in `Float::round`).
    pub fn round_to_integer(&self) -> Option<Integer> {
        let r = Float::with_val(self.prec(), self.0.round_ref());
        r.to_integer()
    }

    /// Exact conversion to a rational; every finite float is dyadic.
    pub fn to_rational(&self) -> Option<Rational> {
        self.0.to_rational()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    /// Re-rounds to a different precision.
    pub fn with_prec(&self, prec: u32) -> XReal {
        XReal(Float::with_val(prec, &self.0))
    }

    /// Number of significant decimal digits used by [`XReal::to_decimal`] for
    /// a value of `prec` bits: `ceil(prec * 0.302)`, slightly more than the
    /// binary-to-decimal ratio so serialization is injective enough to
    /// round-trip within one ulp.
    pub fn decimal_digits(prec: u32) -> usize {
        ((prec as f64) * 0.302).ceil() as usize
    }

    /// Decimal serialization at [`XReal::decimal_digits`] significant digits.
    pub fn to_decimal(&self) -> String {
        self.0.to_string_radix(10, Some(Self::decimal_digits(self.prec())))
    }

    /// Parses a decimal string at `prec` bits.
    pub fn from_decimal(prec: u32, s: &str) -> Option<XReal> {
        let incomplete = Float::parse(s).ok()?;
        Some(XReal(Float::with_val(prec, incomplete)))
    }
}

impl fmt::Display for XReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal())
    }
}

impl PartialOrd for XReal {
    fn partial_cmp(&self, other: &XReal) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

impl PartialEq<i64> for XReal {
    fn eq(&self, other: &i64) -> bool {
        self.0 == *other
    }
}

impl PartialOrd<i64> for XReal {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        self.0.partial_cmp(other)
    }
}

fn join_prec(a: &XReal, b: &XReal) -> u32 {
    a.prec().max(b.prec())
}

macro_rules! xreal_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait<&XReal> for &XReal {
            type Output = XReal;
            fn $method(self, rhs: &XReal) -> XReal {
                XReal(Float::with_val(
                    join_prec(self, rhs),
                    std::ops::$trait::$method(&self.0, &rhs.0),
                ))
            }
        }
        impl std::ops::$trait<XReal> for &XReal {
            type Output = XReal;
            fn $method(self, rhs: XReal) -> XReal {
                std::ops::$trait::$method(self, &rhs)
            }
        }
        impl std::ops::$trait<&XReal> for XReal {
            type Output = XReal;
            fn $method(self, rhs: &XReal) -> XReal {
                std::ops::$trait::$method(&self, rhs)
            }
        }
        impl std::ops::$trait<XReal> for XReal {
            type Output = XReal;
            fn $method(self, rhs: XReal) -> XReal {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
    };
}

xreal_binop!(Add, add);
xreal_binop!(Sub, sub);
xreal_binop!(Mul, mul);
xreal_binop!(Div, div);

macro_rules! xreal_scalar_binop {
    ($trait:ident, $method:ident, $scalar:ty) => {
        impl std::ops::$trait<$scalar> for &XReal {
            type Output = XReal;
            fn $method(self, rhs: $scalar) -> XReal {
                XReal(Float::with_val(
                    self.prec(),
                    std::ops::$trait::$method(&self.0, rhs),
                ))
            }
        }
        impl std::ops::$trait<$scalar> for XReal {
            type Output = XReal;
            fn $method(self, rhs: $scalar) -> XReal {
                std::ops::$trait::$method(&self, rhs)
            }
        }
    };
}

xreal_scalar_binop!(Add, add, i64);
xreal_scalar_binop!(Sub, sub, i64);
xreal_scalar_binop!(Mul, mul, i64);
xreal_scalar_binop!(Div, div, i64);
xreal_scalar_binop!(Add, add, u64);
xreal_scalar_binop!(Sub, sub, u64);
xreal_scalar_binop!(Mul, mul, u64);
xreal_scalar_binop!(Div, div, u64);

impl std::ops::Neg for &XReal {
    type Output = XReal;
    fn neg(self) -> XReal {
        XReal(Float::with_val(self.prec(), -&self.0))
    }
}

impl std::ops::Neg for XReal {
    type Output = XReal;
    fn neg(self) -> XReal {
        -&self
    }
}

impl std::ops::AddAssign<&XReal> for XReal {
    fn add_assign(&mut self, rhs: &XReal) {
        debug_assert!(self.prec() >= rhs.prec());
        self.0 += &rhs.0;
    }
}

impl std::ops::SubAssign<&XReal> for XReal {
    fn sub_assign(&mut self, rhs: &XReal) {
        debug_assert!(self.prec() >= rhs.prec());
        self.0 -= &rhs.0;
    }
}
