//! Complex arithmetic over [`XReal`] pairs.
//!
//! Only the operations the exponential sums need: ring arithmetic, conjugate,
//! modulus, and powers of unit-circle values. Powers renormalize the running
//! product back to the unit circle every [`RENORM_INTERVAL`] multiplications
//! so modulus drift never compounds past a few ulps.

use std::fmt;

use rug::Float;

use super::real::XReal;

/// Renormalize unit-circle products after this many multiplications.
pub const RENORM_INTERVAL: u32 = 16;

/// A complex number with extended-precision components.
#[derive(Debug, Clone, PartialEq)]
pub struct XComplex {
    pub re: XReal,
    pub im: XReal,
}

impl XComplex {
    pub fn new(re: XReal, im: XReal) -> Self {
        XComplex { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        XComplex { re: XReal::zero(prec), im: XReal::zero(prec) }
    }

    pub fn one(prec: u32) -> Self {
        XComplex { re: XReal::from_i64(prec, 1), im: XReal::zero(prec) }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn conj(&self) -> XComplex {
        XComplex { re: self.re.clone(), im: -&self.im }
    }

    /// `re^2 + im^2`.
    pub fn norm_sqr(&self) -> XReal {
        self.re.square() + self.im.square()
    }

    /// Euclidean modulus, computed as a correctly-rounded hypotenuse.
    pub fn modulus(&self) -> XReal {
        let h = Float::with_val(self.prec(), self.re.inner().hypot_ref(self.im.inner()));
        XReal::from_float(h)
    }

    /// Scales both components by a real factor.
    pub fn scale(&self, k: &XReal) -> XComplex {
        XComplex { re: &self.re * k, im: &self.im * k }
    }

    /// Divides the value by its own modulus, pinning it to the unit circle.
    pub fn renormalize(&self) -> XComplex {
        let m = self.modulus();
        XComplex { re: &self.re / &m, im: &self.im / &m }
    }

    /// `self^e` for a value on (or within a few ulps of) the unit circle.
    ///
    /// Binary exponentiation; both the running product and the repeated
    /// square are pulled back to the unit circle every
    /// [`RENORM_INTERVAL`] multiplications.
    pub fn pow_unit(&self, e: u64) -> XComplex {
        let prec = self.prec();
        if e == 0 {
            return XComplex::one(prec);
        }
        let mut result = XComplex::one(prec);
        let mut base = self.clone();
        let mut exp = e;
        let mut muls: u32 = 0;
        loop {
            if exp & 1 == 1 {
                result = &result * &base;
                muls += 1;
                if muls % RENORM_INTERVAL == 0 {
                    result = result.renormalize();
                }
            }
            exp >>= 1;
            if exp == 0 {
                break;
            }
            base = &base * &base;
            muls += 1;
            if muls % RENORM_INTERVAL == 0 {
                base = base.renormalize();
            }
        }
        result
    }

    /// Serializes as `re|im` using the decimal form of each component.
    pub fn to_pair_string(&self) -> String {
        format!("{}|{}", self.re.to_decimal(), self.im.to_decimal())
    }

    /// Parses the `re|im` form produced by [`XComplex::to_pair_string`].
    pub fn from_pair_string(prec: u32, s: &str) -> Option<XComplex> {
        let (re, im) = s.split_once('|')?;
        Some(XComplex {
            re: XReal::from_decimal(prec, re)?,
            im: XReal::from_decimal(prec, im)?,
        })
    }
}

impl fmt::Display for XComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i", self.re, self.im)
    }
}

impl std::ops::Add<&XComplex> for &XComplex {
    type Output = XComplex;
    fn add(self, rhs: &XComplex) -> XComplex {
        XComplex { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl std::ops::Sub<&XComplex> for &XComplex {
    type Output = XComplex;
    fn sub(self, rhs: &XComplex) -> XComplex {
        XComplex { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl std::ops::Mul<&XComplex> for &XComplex {
    type Output = XComplex;
    fn mul(self, rhs: &XComplex) -> XComplex {
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        XComplex { re, im }
    }
}

impl std::ops::Neg for &XComplex {
    type Output = XComplex;
    fn neg(self) -> XComplex {
        XComplex { re: -&self.re, im: -&self.im }
    }
}

impl std::ops::AddAssign<&XComplex> for XComplex {
    fn add_assign(&mut self, rhs: &XComplex) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

/// Incremental powers of a fixed unit-circle base.
///
/// Calling [`UnitPowers::advance`] moves the running value from `base^m` to
/// `base^(m+1)` with one multiplication, renormalizing on the same
/// [`RENORM_INTERVAL`] schedule as [`XComplex::pow_unit`]. Used by the outer
/// sums that need `base^1, base^2, ..., base^(p-1)` in order.
pub struct UnitPowers {
    base: XComplex,
    cur: XComplex,
    muls: u32,
}

impl UnitPowers {
    /// Starts at `base^0 = 1`.
    pub fn new(base: XComplex) -> Self {
        let one = XComplex::one(base.prec());
        UnitPowers { base, cur: one, muls: 0 }
    }

    /// Multiplies the running power by the base and returns the new value.
    pub fn advance(&mut self) -> &XComplex {
        self.cur = &self.cur * &self.base;
        self.muls += 1;
        if self.muls % RENORM_INTERVAL == 0 {
            self.cur = self.cur.renormalize();
        }
        &self.cur
    }

    pub fn current(&self) -> &XComplex {
        &self.cur
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(prec: u32, re: f64, im: f64) -> XComplex {
        XComplex::new(XReal::from_f64(prec, re), XReal::from_f64(prec, im))
    }

    #[test]
    fn mul_by_conjugate_is_norm() {
        let z = c(128, 0.6, 0.8);
        let w = &z * &z.conj();
        let eps = XReal::from_i64(128, 1).scale2(-96);
        assert!((&w.re - z.norm_sqr()).abs() < eps);
        assert!(w.im.abs() < eps);
    }

    #[test]
    fn pow_unit_small_exponents() {
        // i^4 = 1, i^3 = -i
        let i = c(128, 0.0, 1.0);
        let eps = XReal::from_i64(128, 1).scale2(-90);
        let p4 = i.pow_unit(4);
        assert!((&p4.re - XReal::from_i64(128, 1)).abs() < eps);
        assert!(p4.im.abs() < eps);
        let p3 = i.pow_unit(3);
        assert!(p3.re.abs() < eps);
        assert!((&p3.im + XReal::from_i64(128, 1)).abs() < eps);
    }

    #[test]
    fn incremental_powers_track_pow_unit() {
        // exp(2πi/7) stepped 20 times vs direct exponentiation
        let prec = 192;
        let t = XReal::from_ratio(prec, 1, 7);
        let z = crate::numerics::unit_exp_raw(&t, prec);
        let mut steps = UnitPowers::new(z.clone());
        let mut last = XComplex::one(prec);
        for _ in 0..20 {
            last = steps.advance().clone();
        }
        let direct = z.pow_unit(20);
        let eps = XReal::from_i64(prec, 1).scale2(-(prec as i32 - 40));
        assert!((&last.re - &direct.re).abs() < eps);
        assert!((&last.im - &direct.im).abs() < eps);
    }

    #[test]
    fn pair_string_round_trip() {
        let z = c(96, -1.25, 3.5);
        let s = z.to_pair_string();
        let back = XComplex::from_pair_string(96, &s).unwrap();
        assert_eq!(z, back);
    }
}
