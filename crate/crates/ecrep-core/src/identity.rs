//! The zero-sum identity for the representation at `f(x) = x`.
//!
//! `Σ_{x=0}^{p-1} e^{-2πix/p} = 0` is an exact geometric-sum fact, so the
//! rational representation inherits three measurable consequences:
//! `Σ Q(x) = 0`, `Σ R(x) = 0`, and — rearranging the real part —
//! `p = Σ_x 2π²x² / ((p-2S(x))² + (πx)²)`. The arguments `f(x) = x` always
//! satisfy `|f| < p`, and nothing here needs `p` to be prime, so the check
//! runs over composites too. The third sum is evaluated directly from `S`
//! rather than as `Σ (1 - Q)`, which makes the report a genuine stack of
//! the closed form, the `(Q, R)` algebra, and the geometric-sum fact.

use crate::error::Result;
use crate::exec::{chunked_reduce, ExecPolicy};
use crate::numerics::{PrecisionContext, XReal};
use crate::repr::qr_with_s;
use crate::special::work_prec;

/// Measured sums for one modulus. All three should vanish against their
/// targets; `abs_error` is the headline figure `|identity_sum − p|`.
#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub p: u64,
    pub q_sum: XReal,
    pub r_sum: XReal,
    pub identity_sum: XReal,
    pub abs_error: XReal,
}

/// Accumulates the three sums over `x in [0, p)`. Requires `p >= 2`; the
/// modulus may be composite.
pub fn identity_check(p: u64, ctx: &PrecisionContext, policy: &ExecPolicy) -> Result<IdentityReport> {
    assert!(p >= 2, "the zero-sum identity is stated for p >= 2 (got {p})");
    let w = work_prec(ctx);
    let pi = ctx.pi().with_prec(w);
    let zero = || (XReal::zero(w), XReal::zero(w), XReal::zero(w));
    let sums = chunked_reduce(
        p,
        policy,
        |range| -> Result<(XReal, XReal, XReal)> {
            let (mut q_acc, mut r_acc, mut id_acc) = zero();
            for x in range {
                let fv = XReal::from_u64(w, x);
                let (point, s, _) = qr_with_s(&fv, p, ctx)?;
                q_acc += &point.q;
                r_acc += &point.r;
                // 2π²x² / ((p-2S)² + (πx)²), built from S itself.
                let pif = &pi * &fv;
                let denom = (XReal::from_u64(w, p) - s.scale2(1)).square() + pif.square();
                id_acc += &((&pi * &pif * &fv).scale2(1) / denom);
            }
            Ok((q_acc, r_acc, id_acc))
        },
        |a, b| {
            let (qa, ra, ia) = a?;
            let (qb, rb, ib) = b?;
            Ok((qa + qb, ra + rb, ia + ib))
        },
        Ok(zero()),
    )?;
    let (q_sum, r_sum, identity_sum) = sums;
    let abs_error = (&identity_sum - XReal::from_u64(w, p)).abs();
    Ok(IdentityReport {
        p,
        q_sum: q_sum.with_prec(ctx.bits()),
        r_sum: r_sum.with_prec(ctx.bits()),
        identity_sum: identity_sum.with_prec(ctx.bits()),
        abs_error: abs_error.with_prec(ctx.bits()),
    })
}
