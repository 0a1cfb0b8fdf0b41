//! Floor and fractional-part facts checked through exponential sums.
//!
//! The floor function has the finite Fourier expression
//! `⌊n/p⌋ = (1/p)·Σ_{k=1}^{n} Σ_{m=0}^{p-1} e^{2πimk/p}` — the inner sum is
//! `p` when `p | k` and vanishes otherwise. This module evaluates that
//! double sum numerically and holds it against the integer-division oracle,
//! then checks two exact recursion identities for `{f/p}`, a triangle-
//! inequality lower bound, and the root-count cap that the counting module
//! relies on when it substitutes the degenerate unit point.

use std::cmp::min;

use rug::{Integer, Rational};

use crate::counting::{ensure_prime, f_mod_p_table};
use crate::error::{Error, Result};
use crate::numerics::{
    is_prime_u64, unit_exp_raw, CurveParams, PrecisionContext, XComplex, XReal,
};
use crate::special::work_prec;

/// Largest `n` the double sum accepts; together with the modulus cap this
/// bounds the evaluation at about ten million terms.
pub const MAX_N: u64 = 100_000;
/// Largest modulus the double sum accepts.
pub const MAX_P: u64 = 101;

/// A floor value recovered from the exponential double sum.
#[derive(Debug, Clone)]
pub struct FloorSumReport {
    pub n: u64,
    pub p: u64,
    /// The rounded real part — on success this equals `n div p`.
    pub floor_value: u64,
    /// The pre-rounding complex value of `(1/p)·ΣΣ e^{2πimk/p}`.
    pub expsum_value: XComplex,
    /// `|expsum_value − floor_value|`; must be below 0.5 or the rounding is
    /// refused.
    pub deviation: XReal,
}

fn check_gates(n: u64, p: u64) -> Result<()> {
    if p < 2 {
        return Err(Error::InvalidModulus { p, reason: "modulus must be at least 2" });
    }
    if n == 0 {
        return Err(Error::DomainError { what: "the k-sum starts at 1; n must be >= 1".into() });
    }
    if n > MAX_N || p > MAX_P {
        return Err(Error::BudgetExceeded {
            detail: format!("double sum has n·p = {n}·{p} terms; caps are n <= {MAX_N}, p <= {MAX_P}"),
        });
    }
    Ok(())
}

/// `(1/p)·Σ_{k=1}^{n} Σ_{m=0}^{p-1} e^{2πimk/p}` at working precision. The
/// inner sums only depend on `k mod p`, so they are formed once per residue
/// and the k-loop replays them — term order is identical to the literal
/// double loop.
fn double_sum(n: u64, p: u64, w: u32) -> XComplex {
    let roots: Vec<XComplex> =
        (0..p).map(|j| unit_exp_raw(&XReal::from_ratio(w, j as i64, p), w)).collect();
    let inner: Vec<XComplex> = (0..p)
        .map(|r| {
            let mut acc = XComplex::zero(w);
            for m in 0..p {
                acc += &roots[(m * r % p) as usize];
            }
            acc
        })
        .collect();
    let mut acc = XComplex::zero(w);
    for k in 1..=n {
        acc += &inner[(k % p) as usize];
    }
    XComplex::new(&acc.re / p, &acc.im / p)
}

/// Rounds the sum's real part to a nonnegative integer and measures how far
/// the complex value sits from it; refuses when the distance reaches 0.5.
fn pin_to_integer(value: &XComplex) -> Result<(Integer, XReal)> {
    let nearest = match value.re.round_to_integer() {
        Some(v) if v >= 0 => v,
        _ => {
            return Err(Error::PrecisionExceeded {
                residual: format!("sum {} does not round to a valid floor", value.re),
            })
        }
    };
    let deviation = XComplex::new(
        &value.re - XReal::from_integer(value.prec(), &nearest),
        value.im.clone(),
    )
    .modulus();
    if !(deviation < XReal::from_ratio(64, 1, 2)) {
        return Err(Error::PrecisionExceeded { residual: deviation.to_decimal() });
    }
    Ok((nearest, deviation))
}

/// Evaluates the double sum for `⌊n/p⌋` and rounds it, refusing when the
/// value is not clearly pinned to an integer.
pub fn floor_via_expsum(n: u64, p: u64, ctx: &PrecisionContext) -> Result<FloorSumReport> {
    check_gates(n, p)?;
    let value = double_sum(n, p, work_prec(ctx));
    let (nearest, deviation) = pin_to_integer(&value)?;
    Ok(FloorSumReport {
        n,
        p,
        floor_value: nearest.to_u64().expect("floor of n/p fits in u64"),
        expsum_value: XComplex::new(
            value.re.with_prec(ctx.bits()),
            value.im.with_prec(ctx.bits()),
        ),
        deviation: deviation.with_prec(ctx.bits()),
    })
}

/// `{f/p}` recovered as `f/p` minus the double sum — should match the exact
/// `(f mod p)/p` to working accuracy.
pub fn frac_via_expsum(f_val: u64, p: u64, ctx: &PrecisionContext) -> Result<XReal> {
    check_gates(f_val, p)?;
    let w = work_prec(ctx);
    let sum = double_sum(f_val, p, w);
    // Same rounding gate as the floor route: an unpinned sum is refused.
    pin_to_integer(&sum)?;
    Ok((XReal::from_ratio(w, f_val as i64, p) - &sum.re).with_prec(ctx.bits()))
}

fn frac_exact(v: i64, p: u64) -> Rational {
    let rem = Integer::from(v).div_rem_euc(Integer::from(p)).1;
    Rational::from((rem, Integer::from(p)))
}

/// Checks the exact stepping identities for fractional parts, in rational
/// arithmetic: for `f ≢ 0 (mod p)`, `{f/p} = {(f-1)/p} + 1/p`; for
/// `f ≡ 0 (mod p)`, `{(f-2)/p} = 1 - 2/p`.
///
/// Callers must supply `p >= 3` and `f_val >= 2`.
pub fn stepping_identities_hold(f_val: u64, p: u64) -> bool {
    assert!(p >= 3, "the stepping identities need p >= 3 (got {p})");
    assert!(f_val >= 2, "the stepping identities need f >= 2 (got {f_val})");
    let f = f_val as i64;
    if f_val % p != 0 {
        frac_exact(f, p) == frac_exact(f - 1, p) + Rational::from((1u64, p))
    } else {
        frac_exact(f - 2, p) == Rational::from(1) - Rational::from((2u64, p))
    }
}

/// Triangle-inequality lower bound for `{f/p}`: subtracts from `f/p` one
/// `p`-th of `Σ_m min(bound_m, f)` where `bound_m` caps the geometric k-sum
/// at index `m` (`f` itself at `m = 0`, `p/m` up to the halfway point,
/// `p/(p-m)` past it). The exact rational value is rounded *downward* into
/// the requested precision, so the returned value never overstates the
/// bound and `{f/p} >= bound` survives the conversion.
///
/// Callers must supply an odd prime `p` and `f_val >= 1`. The bound is weak
/// — never positive, in fact — but it is the audit trail for the sum-swap
/// estimates, so it is checked, not assumed.
pub fn frac_lower_bound(f_val: u64, p: u64, ctx: &PrecisionContext) -> XReal {
    assert!(f_val >= 1, "the bound is stated for f >= 1 (got {f_val})");
    assert!(p > 2 && is_prime_u64(p), "the bound is stated for odd primes (got {p})");
    let f = Rational::from(f_val);
    // m = 0: the k-sum is f_val terms of 1, so its modulus is exactly f_val.
    let mut total = f.clone();
    let half = p / 2;
    for m in 1..=half {
        total += min(Rational::from((p, m)), f.clone());
    }
    for m in half + 1..p {
        total += min(Rational::from((p, p - m)), f.clone());
    }
    let exact = Rational::from((f_val, p)) - total / Rational::from(p);
    round_toward_neg_inf(&exact, ctx.bits())
}

/// Nearest-rounds `exact` into `bits` of precision, then nudges downward
/// until the float's exact value is `<= exact`.
fn round_toward_neg_inf(exact: &Rational, bits: u32) -> XReal {
    let mut out = XReal::from_rational(bits, exact);
    let step = {
        let mag = out.abs();
        let one = XReal::from_i64(bits, 1);
        (if mag > one { mag } else { one }).scale2(-(bits as i32) + 4)
    };
    while out.to_rational().map_or(true, |r| &r > exact) {
        out = out - &step;
    }
    out
}

/// `#{x in [0, p): f(x) ≡ 0 (mod p)}` by enumeration. A cubic over a field
/// has at most three roots, so a larger count is reported as an internal
/// bug, not a result.
pub fn lagrange_root_count(curve: &CurveParams) -> Result<u64> {
    let p = ensure_prime(curve.p)?;
    let roots = f_mod_p_table(curve, p).into_iter().filter(|&r| r == 0).count() as u64;
    if roots > 3 {
        return Err(Error::InvariantViolation {
            detail: format!("cubic has {roots} roots mod {p}; a field bounds it by 3"),
        });
    }
    Ok(roots)
}
