//! Point counting for `y² ≡ x³ + ax + b (mod p)`.
//!
//! Five routes to the same integer: exact enumeration, a Legendre-symbol
//! sum, and three analytic evaluations that expand the solution indicator
//! into exponential sums — the quadratic part collapses into a Gauss sum,
//! and the remaining `x`-factors are either summed directly on the unit
//! circle or replaced by the rational representations from [`crate::repr`].
//! Analytic results must land within 0.5 of an integer or they are rejected
//! rather than rounded.

use std::fmt;
use std::str::FromStr;

use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::exec::{chunked_reduce, ExecPolicy};
use crate::numerics::{
    is_prime_u64, legendre_symbol, unit_exp_raw, CurveParams, PrecisionContext, UnitPowers,
    XComplex, XReal,
};
use crate::repr::{q1r1_x, qr_x};
use crate::special::{work_prec, SeriesDiagnostics};

/// Which counting route produced a result. The string tokens (used by the
/// CLI and serialized records) are fixed: `naive`, `legendre`, `expsum`,
/// `thm2`, `thm3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMethod {
    /// Full enumeration of `(x, y)` pairs.
    Naive,
    /// `1 + p + Σ legendre(f(x))`, exact integers.
    Legendre,
    /// Gauss-sum × unit-circle exponential sum, token `expsum`.
    ExpSum,
    /// Rational representation at the scaled argument `f(x)/p²` raised to
    /// the `m·p²` power, token `thm2`.
    ScaledPower,
    /// Range split at a cutoff between the direct representation and the
    /// fractional-part representation, token `thm3`.
    SplitRange,
}

impl CountMethod {
    pub fn token(self) -> &'static str {
        match self {
            CountMethod::Naive => "naive",
            CountMethod::Legendre => "legendre",
            CountMethod::ExpSum => "expsum",
            CountMethod::ScaledPower => "thm2",
            CountMethod::SplitRange => "thm3",
        }
    }
}

impl fmt::Display for CountMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for CountMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(CountMethod::Naive),
            "legendre" => Ok(CountMethod::Legendre),
            "expsum" => Ok(CountMethod::ExpSum),
            "thm2" => Ok(CountMethod::ScaledPower),
            "thm3" => Ok(CountMethod::SplitRange),
            other => Err(Error::DomainError {
                what: format!(
                    "unknown method '{other}' (expected naive, legendre, expsum, thm2 or thm3)"
                ),
            }),
        }
    }
}

/// Outcome of a count.
#[derive(Debug, Clone)]
pub struct CountResult {
    pub method: CountMethod,
    /// Points including the one at infinity.
    pub n_p: u64,
    /// Pre-rounding value of the analytic formula; absent for exact methods.
    pub raw: Option<XComplex>,
    /// |raw − n_p|; exactly zero for exact methods.
    pub residual: XReal,
    /// Worst series diagnostics across the evaluation, when series ran.
    pub diagnostics: Option<SeriesDiagnostics>,
    /// Range-split cutoff, for the method that has one.
    pub l_cutoff: Option<i64>,
}

/// A quadratic Gauss sum `Σ_y exp(2πi m y²/p)`.
#[derive(Debug, Clone)]
pub struct GaussSumValue {
    pub m: u64,
    pub value: XComplex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiscriminantClass {
    Nonsingular,
    Singular,
}

/// Exact `x³ + a·x + b`.
pub fn f_eval(curve: &CurveParams, x: i64) -> Integer {
    let x = Integer::from(x);
    let mut v = x.clone().square() * &x;
    v += Integer::from(&curve.a * &x);
    v += &curve.b;
    v
}

pub(crate) fn ensure_prime(p: u64) -> Result<u64> {
    if !is_prime_u64(p) {
        return Err(Error::InvalidModulus { p, reason: "modulus must be prime" });
    }
    Ok(p)
}

pub(crate) fn ensure_odd_prime(p: u64) -> Result<u64> {
    ensure_prime(p)?;
    if p == 2 {
        return Err(Error::InvalidModulus { p, reason: "modulus must be an odd prime" });
    }
    Ok(p)
}

/// `singular` iff `4a³ + 27b² ≡ 0 (mod p)`.
pub fn discriminant_class(curve: &CurveParams) -> DiscriminantClass {
    let rem = curve.discriminant_quantity().div_rem_euc(Integer::from(curve.p)).1;
    if rem.is_zero() {
        DiscriminantClass::Singular
    } else {
        DiscriminantClass::Nonsingular
    }
}

fn ensure_nonsingular(curve: &CurveParams) -> Result<()> {
    if discriminant_class(curve) == DiscriminantClass::Singular {
        return Err(Error::SingularCurve { p: curve.p });
    }
    Ok(())
}

/// `f(x) mod p` for every `x in [0, p)`, as small integers.
pub(crate) fn f_mod_p_table(curve: &CurveParams, p: u64) -> Vec<u64> {
    let pz = Integer::from(p);
    let a = curve.a.clone().div_rem_euc(pz.clone()).1.to_u64().expect("reduced below p");
    let b = curve.b.clone().div_rem_euc(pz).1.to_u64().expect("reduced below p");
    (0..p)
        .map(|x| {
            let x = x as u128;
            let p = p as u128;
            let cubic = (x * x % p) * x % p;
            let linear = a as u128 * x % p;
            ((cubic + linear + b as u128) % p) as u64
        })
        .collect()
}

/// Exact oracle: full enumeration of the congruence, plus the point at
/// infinity. `include_singular` lets the enumeration proceed on singular
/// curves (it still counts solutions of the congruence).
pub fn count_naive(curve: &CurveParams, include_singular: bool) -> Result<CountResult> {
    let p = ensure_prime(curve.p)?;
    if !include_singular {
        ensure_nonsingular(curve)?;
    }
    let mut squares = vec![0u64; p as usize];
    for y in 0..p {
        squares[(y as u128 * y as u128 % p as u128) as usize] += 1;
    }
    let affine: u64 = f_mod_p_table(curve, p).into_iter().map(|r| squares[r as usize]).sum();
    Ok(exact_result(CountMethod::Naive, 1 + affine))
}

/// `1 + p + Σ_x legendre(f(x))`, all in exact integer arithmetic.
pub fn count_legendre(curve: &CurveParams) -> Result<CountResult> {
    let p = ensure_odd_prime(curve.p)?;
    ensure_nonsingular(curve)?;
    let mut sum: i64 = 0;
    for r in f_mod_p_table(curve, p) {
        sum += legendre_symbol(&Integer::from(r), p)? as i64;
    }
    let n = 1 + p as i64 + sum;
    debug_assert!(n >= 0);
    Ok(exact_result(CountMethod::Legendre, n as u64))
}

fn exact_result(method: CountMethod, n_p: u64) -> CountResult {
    CountResult {
        method,
        n_p,
        raw: None,
        residual: XReal::zero(64),
        diagnostics: None,
        l_cutoff: None,
    }
}

fn check_gauss_args(m: u64, p: u64) -> Result<()> {
    ensure_odd_prime(p)?;
    if m == 0 || m >= p {
        return Err(Error::DomainError {
            what: format!("gauss sum index m = {m} must lie in [1, {}]", p - 1),
        });
    }
    Ok(())
}

/// `Σ_{y=0}^{p-1} exp(2πi m y²/p)` by direct summation of `p` roots of
/// unity.
pub fn gauss_sum_direct(m: u64, p: u64, ctx: &PrecisionContext) -> Result<GaussSumValue> {
    check_gauss_args(m, p)?;
    let w = work_prec(ctx);
    let roots: Vec<XComplex> =
        (0..p).map(|j| unit_exp_raw(&XReal::from_ratio(w, j as i64, p), w)).collect();
    let mut acc = XComplex::zero(w);
    for y in 0..p {
        let idx = (m as u128 * (y as u128 * y as u128 % p as u128) % p as u128) as usize;
        acc += &roots[idx];
    }
    Ok(GaussSumValue { m, value: round_complex(&acc, ctx.bits()) })
}

/// The elementary closed form of the same sum: `(m/p)·√p` when
/// `p ≡ 1 (mod 4)`, `(m/p)·i·√p` when `p ≡ 3 (mod 4)`.
pub fn gauss_sum_closed(m: u64, p: u64, ctx: &PrecisionContext) -> Result<GaussSumValue> {
    check_gauss_args(m, p)?;
    let value = gauss_closed_at(m, p, work_prec(ctx))?;
    Ok(GaussSumValue { m, value: round_complex(&value, ctx.bits()) })
}

fn gauss_closed_at(m: u64, p: u64, w: u32) -> Result<XComplex> {
    let chi = legendre_symbol(&Integer::from(m), p)?;
    let signed = XReal::from_u64(w, p).sqrt() * chi as i64;
    Ok(if p % 4 == 1 {
        XComplex::new(signed, XReal::zero(w))
    } else {
        XComplex::new(XReal::zero(w), signed)
    })
}

/// Closed Gauss-sum values for every `m in [1, p)`; index 0 is a zero
/// placeholder so the table reads naturally by `m`.
fn gauss_closed_table(p: u64, w: u32) -> Result<Vec<XComplex>> {
    let sqrt_p = XReal::from_u64(w, p).sqrt();
    let mut out = Vec::with_capacity(p as usize);
    out.push(XComplex::zero(w));
    for m in 1..p {
        let signed = &sqrt_p * legendre_symbol(&Integer::from(m), p)? as i64;
        out.push(if p % 4 == 1 {
            XComplex::new(signed, XReal::zero(w))
        } else {
            XComplex::new(XReal::zero(w), signed)
        });
    }
    Ok(out)
}

fn round_complex(z: &XComplex, bits: u32) -> XComplex {
    XComplex::new(z.re.with_prec(bits), z.im.with_prec(bits))
}

fn eps40() -> XReal {
    XReal::from_i64(64, 1).scale2(-40)
}

fn ensure_bits(ctx: &PrecisionContext, max_power: u64) -> Result<()> {
    let minimum = crate::numerics::required_bits(max_power, &eps40())?;
    if ctx.bits() < minimum {
        return Err(Error::PrecisionTooLow { requested: ctx.bits(), minimum });
    }
    Ok(())
}

/// Per-`x` inner sum `Σ_{m=1}^{p-1} g(m)·z^m` with incremental powers.
fn m_sweep(z: XComplex, gauss: &[XComplex], acc: &mut XComplex) {
    let mut powers = UnitPowers::new(z);
    for g in &gauss[1..] {
        *acc += &(g * powers.advance());
    }
}

/// Turns the accumulated `Σ_{m≥1} g(m)·X_m` into a rounded count, enforcing
/// the half-integer rejection gate.
fn finish_analytic(
    method: CountMethod,
    sum: XComplex,
    p: u64,
    ctx: &PrecisionContext,
    diagnostics: Option<SeriesDiagnostics>,
    l_cutoff: Option<i64>,
) -> Result<CountResult> {
    let w = sum.prec();
    let raw = XComplex::new(XReal::from_u64(w, 1 + p) + &sum.re / p, &sum.im / p);
    let nearest = raw.re.round_to_integer();
    let candidate = match nearest {
        Some(n) if n >= 0 => n,
        _ => {
            return Err(Error::PrecisionExceeded {
                residual: format!("raw count {} does not round to a valid total", raw.re),
            })
        }
    };
    let residual = XComplex::new(&raw.re - XReal::from_integer(w, &candidate), raw.im.clone())
        .modulus();
    if !(residual < XReal::from_ratio(64, 1, 2)) {
        return Err(Error::PrecisionExceeded { residual: residual.to_decimal() });
    }
    Ok(CountResult {
        method,
        n_p: candidate.to_u64().expect("count fits in u64"),
        raw: Some(round_complex(&raw, ctx.bits())),
        residual: residual.with_prec(ctx.bits()),
        diagnostics,
        l_cutoff,
    })
}

/// Count via `1 + p + (1/p)·Σ_{m=1}^{p-1} gauss(m)·Σ_x exp(-2πi m f(x)/p)`,
/// the quadratic factor already collapsed to the closed Gauss sum.
pub fn count_expsum(
    curve: &CurveParams,
    ctx: &PrecisionContext,
    policy: &ExecPolicy,
) -> Result<CountResult> {
    let p = ensure_odd_prime(curve.p)?;
    ensure_bits(ctx, p)?;
    let w = work_prec(ctx);
    let gauss = gauss_closed_table(p, w)?;
    let fx = f_mod_p_table(curve, p);
    // Bases exp(-2πi f(x)/p) come from one table of p-th roots.
    let roots: Vec<XComplex> =
        (0..p).map(|j| unit_exp_raw(&XReal::from_ratio(w, -(j as i64), p), w)).collect();
    let sum = chunked_reduce(
        p,
        policy,
        |range| {
            let mut acc = XComplex::zero(w);
            for x in range {
                m_sweep(roots[fx[x as usize] as usize].clone(), &gauss, &mut acc);
            }
            acc
        },
        |a, b| &a + &b,
        XComplex::zero(w),
    );
    finish_analytic(CountMethod::ExpSum, sum, p, ctx, None, None)
}

/// The un-collapsed triple sum `1 + (1/p)Σ_{x,y,m} exp(2πi m(y²-f(x))/p)`.
/// Cubic in `p`, so it exists purely as a cross-check for tiny moduli.
pub fn count_expsum_raw(curve: &CurveParams, ctx: &PrecisionContext) -> Result<CountResult> {
    let p = ensure_odd_prime(curve.p)?;
    if p > 13 {
        return Err(Error::BudgetExceeded {
            detail: format!("triple summation is cubic in p; p = {p} exceeds the p <= 13 cap"),
        });
    }
    ensure_bits(ctx, p)?;
    let w = work_prec(ctx);
    let roots: Vec<XComplex> =
        (0..p).map(|j| unit_exp_raw(&XReal::from_ratio(w, j as i64, p), w)).collect();
    let fx = f_mod_p_table(curve, p);
    let mut sum = XComplex::zero(w);
    for x in 0..p {
        for y in 0..p {
            let d = (y as u128 * y as u128 % p as u128 + p as u128 - fx[x as usize] as u128)
                % p as u128;
            for m in 0..p {
                sum += &roots[(m as u128 * d % p as u128) as usize];
            }
        }
    }
    // The full double sum includes m = 0; pull the constant p² out so the
    // shared finisher (which adds 1 + p) applies unchanged.
    let m0 = XReal::from_u64(w, p * p);
    sum = XComplex::new(&sum.re - &m0, sum.im);
    finish_analytic(CountMethod::ExpSum, sum, p, ctx, None, None)
}

type SweepState = (XComplex, u64, XReal);

fn merge_diag(a: SweepState, b: SweepState) -> SweepState {
    let (za, ta, ba) = a;
    let (zb, tb, bb) = b;
    let tail = if ba < bb { bb } else { ba };
    (&za + &zb, ta.max(tb), tail)
}

/// Count via the scaled representation: each `exp(-2πi m f(x)/p)` becomes
/// the unit-circle point at argument `f(x)/p²` raised to the `m·p²` power.
/// Requires `|f(x)| < p³` over the whole range so the scaled argument stays
/// inside the representation's domain.
pub fn count_scaled_power(
    curve: &CurveParams,
    ctx: &PrecisionContext,
    policy: &ExecPolicy,
) -> Result<CountResult> {
    let p = ensure_odd_prime(curve.p)?;
    let fvals: Vec<Integer> = (0..p).map(|x| f_eval(curve, x as i64)).collect();
    let p_cubed = Integer::from(p).pow(3);
    for (x, f) in fvals.iter().enumerate() {
        if f.clone().abs() >= p_cubed {
            return Err(Error::AdmissibilityError {
                detail: format!("|f({x})| = {} is not below p³ = {p_cubed}", f.clone().abs()),
            });
        }
    }
    let exponent = p
        .checked_mul(p)
        .and_then(|sq| (p - 1).checked_mul(sq))
        .ok_or_else(|| Error::BudgetExceeded {
            detail: format!("exponent (p-1)p² overflows for p = {p}"),
        })?;
    ensure_bits(ctx, exponent)?;
    let w = work_prec(ctx);
    let gauss = gauss_closed_table(p, w)?;
    let p_sq = Integer::from(p).square();
    let state = chunked_reduce(
        p,
        policy,
        |range| -> Result<SweepState> {
            let mut acc = XComplex::zero(w);
            let mut terms = 0u64;
            let mut tail = XReal::zero(w);
            for x in range {
                let scaled = XReal::from_rational(
                    w,
                    &Rational::from((fvals[x as usize].clone(), p_sq.clone())),
                );
                let (pt, diag) = qr_x(&scaled, p, ctx)?;
                let z = XComplex::new(pt.q, pt.r).pow_unit(p * p);
                m_sweep(z, &gauss, &mut acc);
                terms = terms.max(diag.terms_used);
                if tail < diag.tail_bound {
                    tail = diag.tail_bound;
                }
            }
            Ok((acc, terms, tail))
        },
        |a, b| Ok(merge_diag(a?, b?)),
        Ok((XComplex::zero(w), 0, XReal::zero(w))),
    )?;
    let (sum, terms_used, tail_bound) = state;
    let diag = SeriesDiagnostics { terms_used, tail_bound: tail_bound.with_prec(ctx.bits()) };
    finish_analytic(CountMethod::ScaledPower, sum, p, ctx, Some(diag), None)
}

/// The largest `L in [-1, p-1]` with `f(x) < p` for all `0 <= x <= L`,
/// found by exact integer bisection on the increasing branch (`a, b >= 0`).
/// `L = -1` means even `f(0)` reaches `p`.
pub fn find_l(curve: &CurveParams) -> Result<i64> {
    if curve.a < 0 || curve.b < 0 {
        return Err(Error::BranchError {
            detail: format!(
                "cutoff search needs nonnegative coefficients (got a = {}, b = {})",
                curve.a, curve.b
            ),
        });
    }
    let p = curve.p;
    let bound = Integer::from(p);
    if f_eval(curve, 0) >= bound {
        return Ok(-1);
    }
    if f_eval(curve, p as i64 - 1) < bound {
        return Ok(p as i64 - 1);
    }
    // Invariant: f(lo) < p <= f(hi); f is nondecreasing here.
    let (mut lo, mut hi) = (0i64, p as i64 - 1);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if f_eval(curve, mid) < bound {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Count by splitting the `x`-range at a cutoff: where `|f(x)| < p` the
/// direct representation applies; elsewhere the fractional-part one does.
/// Supports the increasing branch (`a, b >= 0`) and the strongly decreasing
/// one (`a < -3(p-1)²`, `b <= 0`); anything in between would need more than
/// two sub-ranges and is rejected.
pub fn count_split_range(
    curve: &CurveParams,
    ctx: &PrecisionContext,
    policy: &ExecPolicy,
) -> Result<CountResult> {
    let p = ensure_odd_prime(curve.p)?;
    ensure_bits(ctx, p - 1)?;
    let increasing = curve.a >= 0 && curve.b >= 0;
    let strong_neg = Integer::from(3) * Integer::from(p - 1).square();
    let decreasing = curve.b <= 0 && curve.a < -strong_neg;
    if !increasing && !decreasing {
        return Err(Error::BranchError {
            detail: format!(
                "a = {}, b = {} fits neither the increasing (a, b >= 0) nor the strongly \
                 decreasing (a < -3(p-1)², b <= 0) parameter range",
                curve.a, curve.b
            ),
        });
    }
    let fvals: Vec<Integer> = (0..p).map(|x| f_eval(curve, x as i64)).collect();
    // Defensive: both branches promise monotone f; a violation means the
    // split boundaries below would be wrong.
    for pair in fvals.windows(2) {
        let ordered = if increasing { pair[0] <= pair[1] } else { pair[0] >= pair[1] };
        if !ordered {
            return Err(Error::AdmissibilityError {
                detail: "cubic is not monotone over the range; split cutoff undefined".into(),
            });
        }
    }
    let bound = Integer::from(p);
    let l_cutoff = if increasing {
        // Direct representation on the prefix [0, L].
        find_l(curve)?
    } else {
        // Direct representation on the suffix (L, p-1]: smallest valid L is
        // just past the last x with |f(x)| >= p.
        match (0..p).rev().find(|&x| fvals[x as usize].clone().abs() >= bound) {
            Some(x) => x as i64,
            None => -1,
        }
    };
    let w = work_prec(ctx);
    let gauss = gauss_closed_table(p, w)?;
    let state = chunked_reduce(
        p,
        policy,
        |range| -> Result<SweepState> {
            let mut acc = XComplex::zero(w);
            let mut terms = 0u64;
            let mut tail = XReal::zero(w);
            for x in range {
                let f = &fvals[x as usize];
                let direct = if increasing { (x as i64) <= l_cutoff } else { (x as i64) > l_cutoff };
                let (z, diag) = if direct {
                    debug_assert!(f.clone().abs() < bound);
                    let (pt, diag) = qr_x(&XReal::from_integer(w, f), p, ctx)?;
                    (XComplex::new(pt.q, pt.r), Some(diag))
                } else {
                    let rem = f.clone().div_rem_floor(bound.clone()).1;
                    if rem.is_zero() {
                        // Exact root of the congruence: the fractional part
                        // is zero and the representation degenerates to 1.
                        (XComplex::one(w), None)
                    } else {
                        let r = XReal::from_rational(w, &Rational::from((rem, bound.clone())));
                        let (pt, diag) = q1r1_x(&r, ctx)?;
                        (XComplex::new(pt.q, pt.r), Some(diag))
                    }
                };
                m_sweep(z, &gauss, &mut acc);
                if let Some(d) = diag {
                    terms = terms.max(d.terms_used);
                    if tail < d.tail_bound {
                        tail = d.tail_bound;
                    }
                }
            }
            Ok((acc, terms, tail))
        },
        |a, b| Ok(merge_diag(a?, b?)),
        Ok((XComplex::zero(w), 0, XReal::zero(w))),
    )?;
    let (sum, terms_used, tail_bound) = state;
    let diag = SeriesDiagnostics { terms_used, tail_bound: tail_bound.with_prec(ctx.bits()) };
    finish_analytic(CountMethod::SplitRange, sum, p, ctx, Some(diag), Some(l_cutoff))
}

/// Exact Hasse-corridor check: `(n_p - p - 1)² < 4p` in integers.
pub fn hasse_check(n_p: u64, p: u64) -> bool {
    let d = n_p as i128 - p as i128 - 1;
    d * d < 4 * p as i128
}

#[cfg(test)]
mod tests;
