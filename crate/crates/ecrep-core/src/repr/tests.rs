use super::*;
use crate::numerics::{make_context, unit_exp};

fn ctx128() -> crate::numerics::PrecisionContext {
    make_context(128).unwrap()
}

/// Independent oracle: Σ_{k even >= 2} ζ(k) t^k = (1 - πt·cot(πt))/2, so the
/// scaled series is p·(that) at t = f/p. Computed straight from MPFR sin/cos
/// at a higher precision than anything under test.
fn s_oracle(f: i64, p: u64, prec: u32) -> XReal {
    let t = XReal::from_ratio(prec, f, p);
    let theta = XReal::from_float(rug::Float::with_val(prec, rug::float::Constant::Pi)) * &t;
    let (sin, cos) = theta.sin_cos();
    (XReal::from_i64(prec, 1) - theta * cos / sin).scale2(-1) * XReal::from_u64(prec, p)
}

#[test]
fn series_pins_exact_value_at_half_ratio() {
    // t = 1/2 makes the cotangent vanish, so the sum is exactly p/2 = 1.
    let ctx = ctx128();
    let (s, diag) = s_series(&Integer::from(1), 2, &ctx, 10_000).unwrap();
    let err = (s - XReal::from_i64(128, 1)).abs();
    assert!(err < XReal::from_i64(64, 1).scale2(-90), "err = {}", err.to_f64());
    assert!(diag.terms_used > 10);
    assert!(diag.tail_bound < ctx.epsilon());
}

#[test]
fn series_and_closed_match_cotangent_oracle() {
    let ctx = ctx128();
    let tol = XReal::from_ratio(64, 1, 1).scale2(-83); // ~1e-25
    for p in [3u64, 7, 13] {
        for f in 1..p as i64 {
            let oracle = s_oracle(f, p, 320);
            let (series, _) = s_series(&Integer::from(f), p, &ctx, 10_000).unwrap();
            let closed = s_closed(&Integer::from(f), p, &ctx).unwrap();
            assert!(
                (&series - &oracle).abs() < tol,
                "series off at f={f}, p={p}: {}",
                (&series - &oracle).abs().to_f64()
            );
            assert!(
                (&closed - &oracle).abs() < tol,
                "closed off at f={f}, p={p}: {}",
                (&closed - &oracle).abs().to_f64()
            );
        }
    }
}

#[test]
fn series_is_even_in_f() {
    let ctx = ctx128();
    let (plus, _) = s_series(&Integer::from(4), 9, &ctx, 10_000).unwrap();
    let (minus, _) = s_series(&Integer::from(-4), 9, &ctx, 10_000).unwrap();
    assert_eq!(plus, minus);
    let c_plus = s_closed(&Integer::from(4), 9, &ctx).unwrap();
    let c_minus = s_closed(&Integer::from(-4), 9, &ctx).unwrap();
    assert!((c_plus - c_minus).abs() < ctx.epsilon());
}

#[test]
fn bounds_bracketing_direction() {
    // The pair returned by s_bounds is ordered (lo < hi), and the geometric
    // main term f²p/(p²-f²) really is a strict lower bound. The `lo` formula
    // itself, however, sits ABOVE the sum: the deviation of S over the main
    // term is (f²/p)·Σ_{k≥1}(ζ(2k)-1)t^(2k-2), and Σ_{k≥1}(ζ(2k)-1) = 3/4
    // exactly, so the deviation stays strictly below 3f²/(4p) for t < 1.
    // We pin the observed direction: main < S < lo < hi.
    let ctx = ctx128();
    for (f, p) in [(3i64, 7u64), (1, 2), (1, 1000), (6, 7)] {
        let (lo, hi) = s_bounds(&Integer::from(f), p, &ctx).unwrap();
        assert!(lo < hi, "lo !< hi at f={f}, p={p}");
        let s = s_closed(&Integer::from(f), p, &ctx).unwrap();
        let w = 192;
        let f2 = XReal::from_i64(w, f).square();
        let pf = XReal::from_u64(w, p);
        let main = &f2 * &pf / (pf.square() - &f2);
        assert!(main < s, "main term not below S at f={f}, p={p}");
        assert!(s < lo, "S vs lo direction changed at f={f}, p={p}");
        assert!(s < hi, "S not below hi at f={f}, p={p}");
    }
    let (lo0, hi0) = s_bounds(&Integer::from(0), 7, &ctx).unwrap();
    assert!(lo0.is_zero() && hi0.is_zero());
}

#[test]
fn series_rejects_out_of_domain() {
    let ctx = ctx128();
    assert!(matches!(
        s_series(&Integer::from(7), 7, &ctx, 100),
        Err(Error::DomainError { .. })
    ));
    assert!(matches!(
        s_closed(&Integer::from(-9), 9, &ctx),
        Err(Error::DomainError { .. })
    ));
    assert!(matches!(
        s_series(&Integer::from(0), 1, &ctx, 100),
        Err(Error::DomainError { .. })
    ));
    let one = XReal::from_i64(64, 1);
    assert!(matches!(w_series(&one, &ctx, 100), Err(Error::DomainError { .. })));
    let neg = XReal::from_ratio(64, -1, 10);
    assert!(matches!(w_closed(&neg, &ctx), Err(Error::DomainError { .. })));
    assert!(matches!(q1r1(&one, &ctx), Err(Error::DomainError { .. })));
}

#[test]
fn frac_decompose_splits_exactly() {
    let ctx = ctx128();
    let d = frac_decompose(&Integer::from(10), 7, &ctx);
    assert_eq!(d.k, Integer::from(1));
    assert_eq!(d.r, ctx.ratio(3, 7));

    let d = frac_decompose(&Integer::from(-3), 7, &ctx);
    assert_eq!(d.k, Integer::from(-1));
    assert_eq!(d.r, ctx.ratio(4, 7));

    let d = frac_decompose(&Integer::from(14), 7, &ctx);
    assert_eq!(d.k, Integer::from(2));
    assert!(d.r.is_zero());

    // k + r reconstructs f/p up to one rounding of r.
    let d = frac_decompose(&Integer::from(-123), 17, &ctx);
    let rebuilt = ctx.real_from_integer(&d.k) + &d.r;
    assert!((rebuilt - ctx.ratio(-123, 17)).abs() < ctx.epsilon());
}

#[test]
fn w_matches_scaled_series_at_unit_modulus() {
    // W is the p = 1 instance of the scaled machinery; check the same
    // cotangent oracle and pin W(1/2) = 1/2.
    let ctx = ctx128();
    let tol = XReal::from_ratio(64, 1, 1).scale2(-83);
    for j in [1u64, 9, 17, 32, 45, 58] {
        let r = ctx.ratio(j as i64, 64);
        let (series, _) = w_series(&r, &ctx, 20_000).unwrap();
        let closed = w_closed(&r, &ctx).unwrap();
        let theta = XReal::from_float(rug::Float::with_val(
            320,
            rug::float::Constant::Pi,
        )) * XReal::from_ratio(320, j as i64, 64);
        let (sin, cos) = theta.sin_cos();
        let oracle = (XReal::from_i64(320, 1) - theta * cos / sin).scale2(-1);
        assert!((&series - &oracle).abs() < tol, "series off at r = {j}/64");
        assert!((&closed - &oracle).abs() < tol, "closed off at r = {j}/64");
    }
    let half = ctx.ratio(1, 2);
    let (w_half, _) = w_series(&half, &ctx, 20_000).unwrap();
    assert!((w_half - &half).abs() < XReal::from_i64(64, 1).scale2(-90));

    let zero = ctx.zero();
    let (w0, d0) = w_series(&zero, &ctx, 10).unwrap();
    assert!(w0.is_zero());
    assert_eq!(d0.terms_used, 1);
    assert!(w_closed(&zero, &ctx).unwrap().is_zero());
}

#[test]
fn unit_points_sit_on_circle_and_track_the_exponential() {
    let ctx = ctx128();
    let sixteen_eps = ctx.epsilon() * 16i64;
    let one = ctx.one();

    // Quarter turn: exp(-2πi/4) = (0, -1).
    let pt = qr(&Integer::from(1), 4, &ctx).unwrap();
    assert!(pt.q.abs() < XReal::from_i64(64, 1).scale2(-83));
    assert!((&pt.r + &one).abs() < XReal::from_i64(64, 1).scale2(-83));

    for p in [5u64, 7, 12] {
        for f in 0..p as i64 {
            let pt = qr(&Integer::from(f), p, &ctx).unwrap();
            let circle = (pt.q.square() + pt.r.square() - &one).abs();
            assert!(circle < sixteen_eps, "off circle at f={f}, p={p}");
            let expected = unit_exp(&ctx.ratio(-f, p), &ctx);
            assert!((&pt.q - &expected.re).abs() < sixteen_eps, "Q off at f={f}, p={p}");
            assert!((&pt.r - &expected.im).abs() < sixteen_eps, "R off at f={f}, p={p}");
        }
    }

    let quarter = ctx.ratio(1, 4);
    let pt = q1r1(&quarter, &ctx).unwrap();
    assert!(pt.q.abs() < sixteen_eps);
    assert!((&pt.r + &one).abs() < sixteen_eps);
    let at_zero = q1r1(&ctx.zero(), &ctx).unwrap();
    assert_eq!(at_zero.q, one);
    assert!(at_zero.r.is_zero());
}

#[test]
fn slow_geometric_ratio_exhausts_term_budget() {
    let ctx = ctx128();
    let near_one = ctx.one() - XReal::from_i64(64, 1).scale2(-30);
    match w_series(&near_one, &ctx, 50) {
        Err(Error::TruncationFailure { terms, .. }) => assert_eq!(terms, 50),
        other => panic!("expected truncation failure, got {other:?}"),
    }
}
