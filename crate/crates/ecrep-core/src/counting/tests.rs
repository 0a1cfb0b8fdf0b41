use super::*;
use crate::numerics::make_context;

fn ctx128() -> PrecisionContext {
    make_context(128).unwrap()
}

fn seq() -> ExecPolicy {
    ExecPolicy::sequential()
}

#[test]
fn cubic_evaluates_exactly() {
    assert_eq!(f_eval(&CurveParams::new(1, 1, 5), 0), 1);
    assert_eq!(f_eval(&CurveParams::new(5, 37, 1087), 10), 1087);
    assert_eq!(f_eval(&CurveParams::new(-2, 0, 7), 3), 21);
    assert_eq!(f_eval(&CurveParams::new(-49, -7, 5), 4), -139);
}

#[test]
fn naive_enumeration_matches_hand_counts() {
    // Squares mod 5 are {0,1,4}; f = 1,3,1,1,4 over x = 0..4 gives
    // 2+0+2+2+2 affine points, plus infinity.
    let n = count_naive(&CurveParams::new(1, 1, 5), false).unwrap();
    assert_eq!(n.n_p, 9);
    assert_eq!(n.method, CountMethod::Naive);
    assert!(n.raw.is_none());
    assert!(n.residual.is_zero());
    assert!(hasse_check(n.n_p, 5));

    assert!(matches!(
        count_naive(&CurveParams::new(1, 1, 4), false),
        Err(Error::InvalidModulus { p: 4, .. })
    ));
    assert!(matches!(
        count_naive(&CurveParams::new(0, 0, 5), false),
        Err(Error::SingularCurve { p: 5 })
    ));
    // y² ≡ x³ (mod 5): x=0 gives one point, x=1 and x=4 give two each.
    assert_eq!(count_naive(&CurveParams::new(0, 0, 5), true).unwrap().n_p, 6);
}

#[test]
fn legendre_route_equals_enumeration() {
    assert_eq!(count_legendre(&CurveParams::new(1, 1, 5)).unwrap().n_p, 9);
    assert_eq!(count_legendre(&CurveParams::new(1, 0, 7)).unwrap().n_p, 8);
    assert!(matches!(
        count_legendre(&CurveParams::new(1, 1, 2)),
        Err(Error::InvalidModulus { p: 2, .. })
    ));
    for p in [5u64, 7, 11, 13] {
        for a in 0..4i64 {
            for b in 0..4i64 {
                let curve = CurveParams::new(a, b, p);
                if discriminant_class(&curve) == DiscriminantClass::Singular {
                    continue;
                }
                let naive = count_naive(&curve, false).unwrap().n_p;
                assert_eq!(
                    count_legendre(&curve).unwrap().n_p,
                    naive,
                    "disagreement at a={a}, b={b}, p={p}"
                );
                assert!(hasse_check(naive, p));
            }
        }
    }
}

#[test]
fn gauss_sums_match_closed_form_and_magnitude() {
    let ctx = ctx128();
    // (1,5): p ≡ 1 (mod 4) and (1/5) = 1, so the sum is √5 exactly.
    let g = gauss_sum_closed(1, 5, &ctx).unwrap();
    assert!((&g.value.re - XReal::from_u64(128, 5).sqrt()).abs() < ctx.epsilon());
    assert!(g.value.im.is_zero());
    // (1,7): p ≡ 3 (mod 4) puts the value on the imaginary axis.
    let g = gauss_sum_closed(1, 7, &ctx).unwrap();
    assert!(g.value.re.is_zero());
    assert!((&g.value.im - XReal::from_u64(128, 7).sqrt()).abs() < ctx.epsilon());
    // (2,5): 2 is a non-residue mod 5, flipping the sign.
    let g = gauss_sum_closed(2, 5, &ctx).unwrap();
    assert!((&g.value.re + XReal::from_u64(128, 5).sqrt()).abs() < ctx.epsilon());

    for p in [5u64, 7, 13, 29] {
        let sqrt_p = XReal::from_u64(160, p).sqrt();
        let tol = &ctx.epsilon() * (8 * p);
        for m in 1..p {
            let direct = gauss_sum_direct(m, p, &ctx).unwrap().value;
            let closed = gauss_sum_closed(m, p, &ctx).unwrap().value;
            assert!(
                (direct.modulus() - &sqrt_p).abs() < tol,
                "|direct| drifted from √p at m={m}, p={p}"
            );
            let diff = &direct - &closed;
            assert!(diff.modulus() < tol, "direct vs closed at m={m}, p={p}");
        }
    }

    assert!(gauss_sum_direct(0, 5, &ctx).is_err());
    assert!(gauss_sum_direct(5, 5, &ctx).is_err());
    assert!(gauss_sum_closed(3, 9, &ctx).is_err());
}

#[test]
fn factored_expsum_reproduces_enumeration() {
    let ctx = ctx128();
    let r = count_expsum(&CurveParams::new(1, 1, 5), &ctx, &seq()).unwrap();
    assert_eq!(r.n_p, 9);
    assert_eq!(r.method, CountMethod::ExpSum);
    assert!(r.residual < XReal::from_i64(64, 1).scale2(-99), "residual {}", r.residual);
    assert!(r.raw.is_some());

    for (a, b, p) in [(1i64, 1i64, 13u64), (2, 3, 7)] {
        let curve = CurveParams::new(a, b, p);
        let naive = count_naive(&curve, false).unwrap().n_p;
        assert_eq!(count_expsum(&curve, &ctx, &seq()).unwrap().n_p, naive);
    }
}

#[test]
fn raw_triple_sum_agrees_on_tiny_moduli() {
    let ctx = ctx128();
    for p in [5u64, 7, 13] {
        let curve = CurveParams::new(1, 1, p);
        let raw = count_expsum_raw(&curve, &ctx).unwrap();
        let factored = count_expsum(&curve, &ctx, &seq()).unwrap();
        assert_eq!(raw.n_p, factored.n_p, "p={p}");
    }
    assert!(matches!(
        count_expsum_raw(&CurveParams::new(1, 1, 17), &ctx),
        Err(Error::BudgetExceeded { .. })
    ));
}

#[test]
fn scaled_power_route_matches_enumeration() {
    let ctx = ctx128();
    let r = count_scaled_power(&CurveParams::new(1, 1, 5), &ctx, &seq()).unwrap();
    assert_eq!(r.n_p, 9);
    assert_eq!(r.method, CountMethod::ScaledPower);
    assert!(r.diagnostics.is_some());

    let naive = count_naive(&CurveParams::new(1, 1, 7), false).unwrap().n_p;
    assert_eq!(count_scaled_power(&CurveParams::new(1, 1, 7), &ctx, &seq()).unwrap().n_p, naive);

    // f(1) = 1 + 27 = 28 >= 3³, so the scaled argument leaves its domain.
    assert!(matches!(
        count_scaled_power(&CurveParams::new(27, 0, 3), &ctx, &seq()),
        Err(Error::AdmissibilityError { .. })
    ));
}

#[test]
fn cutoff_bisection_pins_reference_points() {
    // x³ + 5x + 37 − 1087 has the real root x₀ = 10, so the last x that
    // stays below p is 9.
    assert_eq!(find_l(&CurveParams::new(5, 37, 1087)).unwrap(), 9);
    assert_eq!(find_l(&CurveParams::new(1, 1, 11)).unwrap(), 1);
    assert_eq!(find_l(&CurveParams::new(0, 0, 7)).unwrap(), 1);
    // f(0) already reaches p.
    assert_eq!(find_l(&CurveParams::new(0, 7, 5)).unwrap(), -1);
    // f never reaches p over [0, p-1].
    assert_eq!(find_l(&CurveParams::new(0, 0, 2)).unwrap(), 1);
    assert!(matches!(
        find_l(&CurveParams::new(-1, 0, 7)),
        Err(Error::BranchError { .. })
    ));
}

#[test]
fn split_range_route_matches_enumeration() {
    let ctx = ctx128();
    let r = count_split_range(&CurveParams::new(1, 1, 11), &ctx, &seq()).unwrap();
    assert_eq!(r.n_p, count_naive(&CurveParams::new(1, 1, 11), false).unwrap().n_p);
    assert_eq!(r.method, CountMethod::SplitRange);
    assert_eq!(r.l_cutoff, Some(1));

    // Singular curves are not rejected here; the analytic sum still counts
    // solutions of the congruence.
    let singular = count_split_range(&CurveParams::new(0, 0, 5), &ctx, &seq()).unwrap();
    assert_eq!(singular.n_p, 6);

    // Strongly decreasing branch: a < -3(p-1)² = -48. Every |f(x)| >= p
    // except possibly x = 0, so the whole range runs on the fractional-part
    // representation; f(1) ≡ 0 (mod 5) exercises the exact r = 0 shortcut.
    for b in [-7i64, 0] {
        let curve = CurveParams::new(-49, b, 5);
        let naive = count_naive(&curve, false).unwrap().n_p;
        let split = count_split_range(&curve, &ctx, &seq()).unwrap();
        assert_eq!(split.n_p, naive, "b={b}");
        assert_eq!(split.l_cutoff, Some(4));
    }

    // The gap -3(p-1)² <= a < 0 needs more than two sub-ranges.
    assert!(matches!(
        count_split_range(&CurveParams::new(-1, 0, 5), &ctx, &seq()),
        Err(Error::BranchError { .. })
    ));
}

#[test]
fn split_range_handles_the_large_reference_curve() {
    let ctx = make_context(96).unwrap();
    let curve = CurveParams::new(5, 37, 1087);
    let naive = count_naive(&curve, false).unwrap();
    let split = count_split_range(&curve, &ctx, &ExecPolicy::new(4)).unwrap();
    assert_eq!(split.n_p, naive.n_p);
    assert_eq!(split.l_cutoff, Some(9));
    assert!(hasse_check(split.n_p, 1087));
}

#[test]
fn parallel_reduction_is_bit_identical() {
    let ctx = ctx128();
    let curve = CurveParams::new(2, 3, 31);
    let one = count_expsum(&curve, &ctx, &ExecPolicy::new(1)).unwrap();
    let three = count_expsum(&curve, &ctx, &ExecPolicy::new(3)).unwrap();
    assert_eq!(one.n_p, three.n_p);
    let (a, b) = (one.raw.unwrap(), three.raw.unwrap());
    assert_eq!(a.to_pair_string(), b.to_pair_string());
    assert_eq!(one.residual.to_decimal(), three.residual.to_decimal());

    let s1 = count_split_range(&curve, &ctx, &ExecPolicy::new(1)).unwrap();
    let s3 = count_split_range(&curve, &ctx, &ExecPolicy::new(3)).unwrap();
    assert_eq!(s1.raw.unwrap().to_pair_string(), s3.raw.unwrap().to_pair_string());
}

#[test]
fn hasse_and_discriminant_reference_points() {
    assert!(hasse_check(9, 5));
    assert!(hasse_check(8, 7));
    assert!(!hasse_check(14, 7));
    for p in [7u64, 11, 101] {
        assert!(hasse_check(p + 1, p));
        assert!(!hasse_check(2 * p, p));
    }

    assert_eq!(
        discriminant_class(&CurveParams::new(1, 1, 5)),
        DiscriminantClass::Nonsingular
    );
    assert_eq!(discriminant_class(&CurveParams::new(0, 0, 11)), DiscriminantClass::Singular);
    // 4·(-27) + 27·4 = 0 over the integers, hence 0 mod any p.
    assert_eq!(discriminant_class(&CurveParams::new(-3, 2, 7)), DiscriminantClass::Singular);
}

#[test]
fn method_tokens_round_trip() {
    for m in [
        CountMethod::Naive,
        CountMethod::Legendre,
        CountMethod::ExpSum,
        CountMethod::ScaledPower,
        CountMethod::SplitRange,
    ] {
        assert_eq!(m.token().parse::<CountMethod>().unwrap(), m);
    }
    assert_eq!("thm2".parse::<CountMethod>().unwrap(), CountMethod::ScaledPower);
    assert_eq!("thm3".parse::<CountMethod>().unwrap(), CountMethod::SplitRange);
    assert!("schoof".parse::<CountMethod>().is_err());
}
