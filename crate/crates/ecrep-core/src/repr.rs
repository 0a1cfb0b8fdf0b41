//! Rational-function representations of unit-circle exponentials.
//!
//! For an integer `f` with `|f| < p`, the auxiliary series
//! `S = Σ_{n odd} ζ(n+1) f^(n+1) / p^n` turns into a closed form built from
//! [`crate::special::aux_a1b1`], and the pair
//!
//! ```text
//! Q = 1 - 2π²f²/D,   R = 2πf(2S - p)/D,   D = (p - 2S)² + (πf)²
//! ```
//!
//! lands exactly on the unit circle and approximates `exp(-2πi f/p)`. A
//! scale-free variant (`W`, `Q1`, `R1`) does the same for a fractional part
//! `r` in `[0, 1)`, which is what makes split-range counting possible when
//! `|f|` outgrows `p`.

use rug::Integer;

use crate::error::{Error, Result};
use crate::numerics::{PrecisionContext, XComplex, XReal};
use crate::special::{aux_a1b1_diag, work_prec, zeta_pos, SeriesDiagnostics};

/// A point `(q, r)` produced by the rational representations; lies on the
/// unit circle up to rounding.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitPoint {
    pub q: XReal,
    pub r: XReal,
}

impl UnitPoint {
    /// View as `q + ir`.
    pub fn to_complex(&self) -> XComplex {
        XComplex::new(self.q.clone(), self.r.clone())
    }
}

/// Result of splitting `f/p` into integer and fractional parts.
#[derive(Debug, Clone, PartialEq)]
pub struct FracDecomposition {
    pub k: Integer,
    pub r: XReal,
}

/// Splits `f_val/p` as `k + r` with `k = floor(f_val/p)` exact and
/// `r in [0, 1)` rounded once at the working precision.
pub fn frac_decompose(f_val: &Integer, p: u64, ctx: &PrecisionContext) -> FracDecomposition {
    assert!(p >= 1, "modulus must be positive");
    let (k, rem) = f_val.clone().div_rem_floor(Integer::from(p));
    let r = ctx.real_from_rational(&rug::Rational::from((rem, Integer::from(p))));
    FracDecomposition { k, r }
}

fn check_f_range(f_val: &Integer, p: u64) -> Result<()> {
    if p < 2 {
        return Err(Error::DomainError { what: format!("modulus {p} must be >= 2") });
    }
    if f_val.clone().abs() >= p {
        return Err(Error::DomainError {
            what: format!("need |f| < p, got f = {f_val}, p = {p}"),
        });
    }
    Ok(())
}

/// Truncated evaluation of `S = Σ_{n odd} ζ(n+1) f^(n+1)/p^n` for `|f| < p`.
///
/// Terms shrink geometrically with ratio `(f/p)²`; summation stops once the
/// geometric tail estimate (with every zeta factor bounded by `ζ(2)`) drops
/// below the context epsilon, or fails with
/// [`Error::TruncationFailure`] after `max_terms` odd terms.
pub fn s_series(
    f_val: &Integer,
    p: u64,
    ctx: &PrecisionContext,
    max_terms: u64,
) -> Result<(XReal, SeriesDiagnostics)> {
    check_f_range(f_val, p)?;
    let w = work_prec(ctx);
    let eps = ctx.epsilon().with_prec(w);
    let zeta2 = zeta_pos(2, ctx)?.with_prec(w);

    let f = XReal::from_integer(w, f_val);
    let ratio = (&f / p).square(); // q = (f/p)^2
    let geom = &ratio / (XReal::from_i64(w, 1) - &ratio); // q/(1-q)
    let mut u = f.square() / p; // f^(n+1)/p^n at n = 1
    let mut sum = XReal::zero(w);
    let mut terms_used = 0u64;
    let mut n = 1u32;
    loop {
        sum = sum + zeta_pos(n + 1, ctx)?.with_prec(w) * &u;
        terms_used += 1;
        let tail = &zeta2 * u.abs() * &geom;
        if tail < eps {
            let diag = SeriesDiagnostics {
                terms_used,
                tail_bound: tail.with_prec(ctx.bits()),
            };
            return Ok((sum.with_prec(ctx.bits()), diag));
        }
        if terms_used >= max_terms {
            return Err(Error::TruncationFailure {
                terms: terms_used,
                tail_bound: tail.to_decimal(),
            });
        }
        u = u * &ratio;
        n += 2;
    }
}

/// Closed form of the `S` series via the auxiliary pair:
/// `2S = f·(2pf/(p²-f²) - (1-f/p)·A + (1+f/p)·B)`.
pub fn s_closed(f_val: &Integer, p: u64, ctx: &PrecisionContext) -> Result<XReal> {
    check_f_range(f_val, p)?;
    let w = work_prec(ctx);
    let fv = XReal::from_integer(w, f_val);
    let (s, _) = s_closed_x(&fv, p, ctx)?;
    Ok(s.with_prec(ctx.bits()))
}

/// Real-argument version of [`s_closed`], shared with the counting methods
/// that evaluate the same formula at scaled arguments like `f(x)/p²`.
/// Returns the value at working precision together with series diagnostics.
pub(crate) fn s_closed_x(
    fv: &XReal,
    p: u64,
    ctx: &PrecisionContext,
) -> Result<(XReal, SeriesDiagnostics)> {
    let w = work_prec(ctx);
    let fv = fv.with_prec(w);
    let pf = XReal::from_u64(w, p);
    let t = &fv / &pf;
    if !(t.abs() < XReal::from_i64(w, 1)) {
        return Err(Error::DomainError {
            what: format!("closed form needs |f| < p (f/p = {})", t.to_f64()),
        });
    }
    let tol = ctx.epsilon();
    let (a, b, diag) = aux_a1b1_diag(&t, ctx, &tol)?;
    let one = XReal::from_i64(w, 1);
    let main = (&pf * &fv).scale2(1) / (pf.square() - fv.square());
    let half_sum =
        main - (&one - &t) * a.with_prec(w) + (&one + &t) * b.with_prec(w);
    Ok(((&fv * half_sum).scale2(-1), diag))
}

/// Sandwich bounds for the `S` series:
/// `f²(p/(p²-f²) + 3/(4p)) < S < f²(p/(p²-f²) + (π²/6+1)/p)`.
///
/// Degenerates to `(0, 0)` at `f = 0`.
pub fn s_bounds(f_val: &Integer, p: u64, ctx: &PrecisionContext) -> Result<(XReal, XReal)> {
    check_f_range(f_val, p)?;
    if f_val.is_zero() {
        return Ok((ctx.zero(), ctx.zero()));
    }
    let w = work_prec(ctx);
    let f2 = XReal::from_integer(w, f_val).square();
    let pf = XReal::from_u64(w, p);
    let main = &pf / (pf.square() - &f2);
    let lo = &f2 * (&main + XReal::from_ratio(w, 3, 4 * p));
    let pi = ctx.pi().with_prec(w);
    let hi = &f2 * (&main + (pi.square() / 6i64 + 1i64) / &pf);
    Ok((lo.with_prec(ctx.bits()), hi.with_prec(ctx.bits())))
}

/// The unit-circle point approximating `exp(-2πi f/p)` for `|f| < p`.
pub fn qr(f_val: &Integer, p: u64, ctx: &PrecisionContext) -> Result<UnitPoint> {
    check_f_range(f_val, p)?;
    let w = work_prec(ctx);
    let fv = XReal::from_integer(w, f_val);
    let (point, _) = qr_x(&fv, p, ctx)?;
    Ok(UnitPoint { q: point.q.with_prec(ctx.bits()), r: point.r.with_prec(ctx.bits()) })
}

/// Real-argument `(Q, R)` at working precision, plus series diagnostics.
pub(crate) fn qr_x(
    fv: &XReal,
    p: u64,
    ctx: &PrecisionContext,
) -> Result<(UnitPoint, SeriesDiagnostics)> {
    let (point, _, diag) = qr_with_s(fv, p, ctx)?;
    Ok((point, diag))
}

/// As [`qr_x`], but also hands back the underlying scaled-series value `S`
/// so callers that need both do not pay for the series twice.
pub(crate) fn qr_with_s(
    fv: &XReal,
    p: u64,
    ctx: &PrecisionContext,
) -> Result<(UnitPoint, XReal, SeriesDiagnostics)> {
    let w = work_prec(ctx);
    let fv = fv.with_prec(w);
    let (s, diag) = s_closed_x(&fv, p, ctx)?;
    let pi = ctx.pi().with_prec(w);
    let pif = &pi * &fv;
    let p_minus_2s = XReal::from_u64(w, p) - s.scale2(1);
    let d = p_minus_2s.square() + pif.square();
    let q = XReal::from_i64(w, 1) - (&pi * &pif * &fv).scale2(1) / &d;
    let r = -(&pif * &p_minus_2s).scale2(1) / &d;
    Ok((UnitPoint { q, r }, s, diag))
}

/// Scale-free analog of the `S` series at a fractional argument:
/// `W = Σ_{n odd} ζ(n+1) r^(n+1)` for `r in [0, 1)`.
pub fn w_series(
    r: &XReal,
    ctx: &PrecisionContext,
    max_terms: u64,
) -> Result<(XReal, SeriesDiagnostics)> {
    check_r_range(r)?;
    let w = work_prec(ctx);
    if r.is_zero() {
        return Ok((ctx.zero(), SeriesDiagnostics { terms_used: 1, tail_bound: ctx.zero() }));
    }
    let eps = ctx.epsilon().with_prec(w);
    let zeta2 = zeta_pos(2, ctx)?.with_prec(w);
    let rv = r.with_prec(w);
    let ratio = rv.square();
    let geom = &ratio / (XReal::from_i64(w, 1) - &ratio);
    let mut u = ratio.clone(); // r^(n+1) at n = 1
    let mut sum = XReal::zero(w);
    let mut terms_used = 0u64;
    let mut n = 1u32;
    loop {
        sum = sum + zeta_pos(n + 1, ctx)?.with_prec(w) * &u;
        terms_used += 1;
        let tail = &zeta2 * u.abs() * &geom;
        if tail < eps {
            let diag = SeriesDiagnostics {
                terms_used,
                tail_bound: tail.with_prec(ctx.bits()),
            };
            return Ok((sum.with_prec(ctx.bits()), diag));
        }
        if terms_used >= max_terms {
            return Err(Error::TruncationFailure {
                terms: terms_used,
                tail_bound: tail.to_decimal(),
            });
        }
        u = u * &ratio;
        n += 2;
    }
}

fn check_r_range(r: &XReal) -> Result<()> {
    if !r.is_finite() || r.is_negative() || !(r < &XReal::from_i64(64, 1)) {
        return Err(Error::DomainError {
            what: format!("fractional argument must lie in [0, 1), got {}", r.to_f64()),
        });
    }
    Ok(())
}

/// Closed form of the `W` series:
/// `2W = r·(2r/(1-r²) + (r-1)·A + (r+1)·B)`.
pub fn w_closed(r: &XReal, ctx: &PrecisionContext) -> Result<XReal> {
    check_r_range(r)?;
    let (w, _) = w_closed_x(r, ctx)?;
    Ok(w.with_prec(ctx.bits()))
}

pub(crate) fn w_closed_x(r: &XReal, ctx: &PrecisionContext) -> Result<(XReal, SeriesDiagnostics)> {
    let w = work_prec(ctx);
    if r.is_zero() {
        return Ok((
            XReal::zero(w),
            SeriesDiagnostics { terms_used: 0, tail_bound: ctx.zero() },
        ));
    }
    let rv = r.with_prec(w);
    let tol = ctx.epsilon();
    let (a, b, diag) = aux_a1b1_diag(&rv, ctx, &tol)?;
    let one = XReal::from_i64(w, 1);
    let main = rv.scale2(1) / (&one - rv.square());
    let half_sum = main + (&rv - &one) * a.with_prec(w) + (&rv + &one) * b.with_prec(w);
    Ok(((&rv * half_sum).scale2(-1), diag))
}

/// The unit-circle point approximating `exp(-2πi r)` for `r in [0, 1)`.
///
/// `r = 0` returns exactly `(1, 0)`.
pub fn q1r1(r: &XReal, ctx: &PrecisionContext) -> Result<UnitPoint> {
    check_r_range(r)?;
    let (point, _) = q1r1_x(r, ctx)?;
    Ok(UnitPoint { q: point.q.with_prec(ctx.bits()), r: point.r.with_prec(ctx.bits()) })
}

pub(crate) fn q1r1_x(
    r: &XReal,
    ctx: &PrecisionContext,
) -> Result<(UnitPoint, SeriesDiagnostics)> {
    let w = work_prec(ctx);
    if r.is_zero() {
        return Ok((
            UnitPoint { q: XReal::from_i64(w, 1), r: XReal::zero(w) },
            SeriesDiagnostics { terms_used: 0, tail_bound: ctx.zero() },
        ));
    }
    let rv = r.with_prec(w);
    let (wv, diag) = w_closed_x(&rv, ctx)?;
    let pi = ctx.pi().with_prec(w);
    let pir = &pi * &rv;
    let one_minus_2w = XReal::from_i64(w, 1) - wv.scale2(1);
    let d = one_minus_2w.square() + pir.square();
    let q = XReal::from_i64(w, 1) - (&pi * &pir * &rv).scale2(1) / &d;
    let rr = -(&pir * &one_minus_2w).scale2(1) / &d;
    Ok((UnitPoint { q, r: rr }, diag))
}

#[cfg(test)]
mod tests;
