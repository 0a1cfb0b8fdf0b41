//! Special values and series: integer zeta values, Bernoulli numbers, the
//! auxiliary telescoping series `C(λ) = Σ_{n≥1} 1/(n(n+λ))`, and an
//! independent integral route to the same sums.
//!
//! `C` is the workhorse: the closed forms in [`crate::repr`] consume it as
//! the pair `A = C(1-t), B = C(1+t)`. It is evaluated as an explicit partial
//! sum plus an Euler–Maclaurin tail whose Bernoulli corrections are exact
//! rationals, so the reported tail bound is a certificate, not a heuristic.

mod bernoulli;
mod quadrature;

pub use bernoulli::bernoulli;
pub use quadrature::integrate_adaptive;

use std::collections::HashMap;
use std::sync::{LazyLock, RwLock};

use rug::{Complete, Integer, Rational};

use crate::error::{Error, Result};
use crate::numerics::{PrecisionContext, XReal};

/// How a truncated series run went: explicit terms consumed and a rigorous
/// bound on everything left out.
#[derive(Debug, Clone)]
pub struct SeriesDiagnostics {
    pub terms_used: u64,
    pub tail_bound: XReal,
}

/// Internal working precision: the advertised bits plus slack that absorbs
/// summation rounding before the final rounding back to `ctx.bits()`.
pub(crate) fn work_prec(ctx: &PrecisionContext) -> u32 {
    ctx.bits() + 64
}

static ZETA_CACHE: LazyLock<RwLock<HashMap<(u32, u32), XReal>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// `ζ(s)` for integer `s >= 2`.
///
/// Small arguments go through Euler–Maclaurin with exact Bernoulli
/// coefficients; once `2^-s` drops below the accuracy target the direct sum
/// is already converged after a couple of terms. Results are memoized per
/// `(s, bits)`.
pub fn zeta_pos(s: u32, ctx: &PrecisionContext) -> Result<XReal> {
    if s < 2 {
        return Err(Error::DomainError { what: format!("zeta_pos: s = {s} must be >= 2") });
    }
    let key = (ctx.bits(), s);
    if let Some(v) = ZETA_CACHE.read().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let value = zeta_pos_uncached(s, ctx)?;
    ZETA_CACHE.write().unwrap().entry(key).or_insert_with(|| value.clone());
    Ok(value)
}

fn zeta_pos_uncached(s: u32, ctx: &PrecisionContext) -> Result<XReal> {
    let w = work_prec(ctx);
    let target_exp = -(ctx.bits() as i32 + 48);
    let target = XReal::from_i64(w, 1).scale2(target_exp);

    // For large s the defining sum is as good as closed form.
    if s as i64 > ctx.bits() as i64 + 48 {
        let mut sum = XReal::zero(w);
        let mut n = 1u64;
        loop {
            let term = XReal::from_u64(w, n).pow_i(-(s as i64));
            if term < target {
                break;
            }
            sum = sum + term;
            n += 1;
        }
        return Ok(sum.with_prec(ctx.bits()));
    }

    let mut cutoff = 24u64.max((ctx.bits() as u64 + 58) / 9 + 6);
    for _attempt in 0..3 {
        if let Some(v) = zeta_euler_maclaurin(s, cutoff, w, &target) {
            return Ok(v.with_prec(ctx.bits()));
        }
        cutoff *= 2;
    }
    Err(Error::TruncationFailure { terms: cutoff, tail_bound: "zeta tail did not shrink".into() })
}

/// One Euler–Maclaurin evaluation with cutoff `n0`; `None` means the
/// correction terms stopped decreasing before reaching `target`.
fn zeta_euler_maclaurin(s: u32, n0: u64, w: u32, target: &XReal) -> Option<XReal> {
    let mut sum = XReal::zero(w);
    for n in 1..n0 {
        sum = sum + XReal::from_u64(w, n).pow_i(-(s as i64));
    }
    let nf = XReal::from_u64(w, n0);
    // integral and half-term pieces
    sum = sum + nf.pow_i(1 - s as i64) / (s as i64 - 1);
    sum = sum + nf.pow_i(-(s as i64)).scale2(-1);

    // B_{2k}/(2k)! * (s)(s+1)...(s+2k-2) * n0^{-s-2k+1}
    let mut poch = Integer::from(s);
    let mut fact = Integer::from(2);
    let mut prev_mag: Option<XReal> = None;
    for k in 1..=400u32 {
        let coeff = bernoulli(2 * k) * Rational::from((poch.clone(), fact.clone()));
        let term = XReal::from_rational(w, &coeff) * nf.pow_i(1 - s as i64 - 2 * k as i64);
        let mag = term.abs();
        sum = sum + term;
        if mag < *target {
            // Remainder is bounded by the first omitted correction, which
            // keeps shrinking in this regime.
            return Some(sum);
        }
        if let Some(p) = prev_mag {
            if mag > p {
                return None;
            }
        }
        prev_mag = Some(mag);
        // extend (s)_(2k-1) and (2k)! for the next round
        poch *= Integer::from(s + 2 * k - 1);
        poch *= Integer::from(s + 2 * k);
        fact *= Integer::from(2 * k + 1);
        fact *= Integer::from(2 * k + 2);
    }
    None
}

/// `ζ(-n)` as an exact rational, for integer `n >= 1`.
///
/// Even negative arguments give zero; odd ones give `-B_{n+1}/(n+1)`.
/// `n = 0` is outside this routine's remit.
pub fn zeta_neg(n: u32) -> Result<Rational> {
    if n == 0 {
        return Err(Error::UnsupportedArgument {
            what: "zeta_neg: n = 0 (the value -1/2 is not produced by this route)".into(),
        });
    }
    let b = bernoulli(n + 1);
    Ok(-b / Rational::from(n + 1))
}

/// `ζ(-n)` evaluated numerically through the reflection product
/// `-sin(πn/2)/(2^n π^(n+1)) · n! · ζ(n+1)`.
///
/// Deliberately does *not* shortcut `sin(πn/2)` to its exact value; the point
/// of this route is to exercise the floating-point path so it can be compared
/// against [`zeta_neg`].
pub fn zeta_neg_via_functional(n: u32, ctx: &PrecisionContext) -> Result<XReal> {
    if n == 0 {
        return Err(Error::UnsupportedArgument {
            what: "zeta_neg_via_functional: n = 0".into(),
        });
    }
    let w = work_prec(ctx);
    let pi = ctx.pi().with_prec(w);
    let sin_term = (&pi * XReal::from_u64(w, n as u64)).scale2(-1).sin();
    let fact = XReal::from_integer(w, &Integer::factorial(n).complete());
    let zeta = zeta_pos(n + 1, ctx)?.with_prec(w);
    let out = -(sin_term * fact * zeta).scale2(-(n as i32)) * pi.pow_i(-(n as i64) - 1);
    Ok(out.with_prec(ctx.bits()))
}

/// Explicit-term candidates for the `C` series cutoff.
const C_CUTOFFS: [u64; 9] = [64, 128, 256, 512, 1024, 2048, 4096, 8192, 10_000];

/// Picks the smallest cutoff whose minimal Euler–Maclaurin correction is
/// predicted (in plain f64 logs, deterministically) to undercut `ln_target`.
fn pick_c_cutoff(ln_target: f64) -> u64 {
    for &n in &C_CUTOFFS {
        let lnn = (n as f64).ln();
        let mut best = f64::INFINITY;
        for k in 1..=40u32 {
            let b = bernoulli(2 * k).to_f64().abs().ln();
            best = best.min(b - (2.0 * k as f64 + 1.0) * lnn);
        }
        if best < ln_target {
            return n;
        }
    }
    *C_CUTOFFS.last().unwrap()
}

fn ln_of(x: &XReal) -> f64 {
    let (m, e) = x.inner().to_f64_exp();
    m.abs().ln() + e as f64 * std::f64::consts::LN_2
}

/// `C(λ) = Σ_{n≥1} 1/(n(n+λ))` for `λ > 0`, with a certified tail bound.
///
/// An explicit sum up to a cutoff `N` is completed by the Euler–Maclaurin
/// tail `[ln(1+λ/N) − λ/(2N(N+λ)) + Σ_k B_{2k}/(2k)·(N^{-2k} − (N+λ)^{-2k})]/λ`;
/// the differences are evaluated in `expm1`/`ln1p` form so nothing cancels.
/// The returned diagnostics carry the explicit term count and a bound on the
/// omitted remainder, which is guaranteed `<= tol` on success.
pub fn series_c(
    lambda: &XReal,
    ctx: &PrecisionContext,
    tol: &XReal,
) -> Result<(XReal, SeriesDiagnostics)> {
    if !lambda.is_finite() || !(lambda > &XReal::zero(64)) {
        return Err(Error::DomainError { what: "series_c: lambda must be positive".into() });
    }
    if !tol.is_finite() || !(tol > &XReal::zero(64)) {
        return Err(Error::DomainError { what: "series_c: tol must be positive".into() });
    }
    let w = work_prec(ctx);
    let lam = lambda.with_prec(w);
    // Aim a factor 4 under tol, but never past what the working precision
    // plus the explicit-sum rounding can certify.
    let floor = XReal::from_i64(w, 1).scale2(-(ctx.bits() as i32 + 40));
    let tol_w = tol.with_prec(w);
    let target = {
        let quarter = tol_w.scale2(-2);
        if quarter < floor { floor } else { quarter }
    };

    let mut n0 = pick_c_cutoff(ln_of(&target));
    loop {
        match series_c_at_cutoff(&lam, n0, w, &target) {
            Some((value, tail_bound)) => {
                if tail_bound > tol_w {
                    return Err(Error::TruncationFailure {
                        terms: n0,
                        tail_bound: tail_bound.to_decimal(),
                    });
                }
                let diag = SeriesDiagnostics {
                    terms_used: n0,
                    tail_bound: tail_bound.with_prec(ctx.bits()),
                };
                return Ok((value.with_prec(ctx.bits()), diag));
            }
            None => {
                // Corrections bottomed out above target: raise the cutoff.
                let next = C_CUTOFFS.iter().copied().find(|&c| c > n0);
                match next {
                    Some(c) => n0 = c,
                    None => {
                        return Err(Error::TruncationFailure {
                            terms: n0,
                            tail_bound: "correction terms stopped decreasing".into(),
                        })
                    }
                }
            }
        }
    }
}

fn series_c_at_cutoff(
    lam: &XReal,
    n0: u64,
    w: u32,
    target: &XReal,
) -> Option<(XReal, XReal)> {
    let mut explicit = XReal::zero(w);
    for n in 1..=n0 {
        explicit = explicit + ((lam + n) * n).recip();
    }
    let nf = XReal::from_u64(w, n0);
    let u = (lam / &nf).ln_1p();
    // tail of sum_{t>N} (1/t - 1/(t+λ)), to be divided by λ
    let mut tail = &u - lam / ((&nf + lam) * &nf).scale2(1);
    let lam_target = target * lam;
    let mut prev_mag: Option<XReal> = None;
    for k in 1..=300u32 {
        let coeff = bernoulli(2 * k) / Integer::from(2 * k);
        let diff = nf.pow_i(-2 * k as i64) * (-(&u * (-(2 * k as i64))).exp_m1());
        let term = XReal::from_rational(w, &coeff) * diff;
        let mag = term.abs();
        tail = tail + term;
        if mag < lam_target {
            let bound = (mag / lam).scale2(1);
            return Some((explicit + tail / lam, bound));
        }
        if let Some(p) = prev_mag {
            if mag > p {
                return None;
            }
        }
        prev_mag = Some(mag);
    }
    None
}

/// The closed-form pair `A = C(1-t)`, `B = C(1+t)` for `|t| < 1`, both with
/// tails at or below `tol`.
pub fn aux_a1b1(
    t: &XReal,
    ctx: &PrecisionContext,
    tol: &XReal,
) -> Result<(XReal, XReal)> {
    let (a, b, _) = aux_a1b1_diag(t, ctx, tol)?;
    Ok((a, b))
}

pub(crate) fn aux_a1b1_diag(
    t: &XReal,
    ctx: &PrecisionContext,
    tol: &XReal,
) -> Result<(XReal, XReal, SeriesDiagnostics)> {
    if !(t.abs() < ctx.one()) {
        return Err(Error::DomainError { what: "aux_a1b1: need |t| < 1".into() });
    }
    let one = ctx.one();
    let (a, da) = series_c(&(&one - t), ctx, tol)?;
    let (b, db) = series_c(&(&one + t), ctx, tol)?;
    let diag = SeriesDiagnostics {
        terms_used: da.terms_used.max(db.terms_used),
        tail_bound: if da.tail_bound > db.tail_bound { da.tail_bound } else { db.tail_bound },
    };
    Ok((a, b, diag))
}

/// Same pair at the fractional argument `r` in `[0, 1)`: `A = C(1-r)`,
/// `B = C(1+r)`.
pub fn aux_a2b2(
    r: &XReal,
    ctx: &PrecisionContext,
    tol: &XReal,
) -> Result<(XReal, XReal)> {
    if r.is_negative() || !(r < &ctx.one()) {
        return Err(Error::DomainError { what: "aux_a2b2: need 0 <= r < 1".into() });
    }
    aux_a1b1(r, ctx, tol)
}

/// `Σ_{k≥1} 1/((k+α)(k+β))` for `β > α > 0`, via the integral
/// `(1/(β-α)) ∫_0^1 (x^α - x^β)/(1-x) dx`.
///
/// The integrand is evaluated in a cancellation-free form (`x^α - x^β =
/// -x^α · expm1((β-α) ln x)`), and the removable point at `x = 1` never gets
/// sampled because Gauss nodes are interior.
pub fn lemma1_integral(
    alpha: &XReal,
    beta: &XReal,
    ctx: &PrecisionContext,
    tol: &XReal,
) -> Result<XReal> {
    if !(alpha > &XReal::zero(64)) || !(beta > alpha) {
        return Err(Error::DomainError { what: "lemma1_integral: need beta > alpha > 0".into() });
    }
    if !tol.is_finite() || !(tol > &XReal::zero(64)) {
        return Err(Error::DomainError { what: "lemma1_integral: tol must be positive".into() });
    }
    let w = work_prec(ctx);
    let al = alpha.with_prec(w);
    let delta = beta.with_prec(w) - &al;
    let one = XReal::from_i64(w, 1);
    let half = XReal::from_ratio(w, 1, 2);
    let integrand = |x: &XReal| {
        // ln x without cancellation on either side of 1/2 (x - 1 is exact
        // there by Sterbenz), then stable power differences via expm1.
        let l = if x < &half { x.ln() } else { (x - &one).ln_1p() };
        let xa = (&al * &l).exp();
        let em = -((&delta * &l).exp_m1());
        xa * em / (&one - x)
    };
    // The quadrature budget guards the raw integral; the result is scaled by
    // 1/delta afterwards, so scale the budget the same way.
    let budget = (tol.with_prec(w) * &delta).scale2(-1);
    let raw = integrate_adaptive(integrand, &XReal::zero(w), &one, &budget, w)?;
    Ok((raw / delta).with_prec(ctx.bits()))
}
