//! Randomized invariants. Kept deliberately small: two properties that hold
//! for *every* input in their domain, complementing the fixed-value oracles
//! in the unit and acceptance suites.

use proptest::prelude::*;
use rug::Integer;

use ecrep_core::counting::{count_legendre, count_naive, discriminant_class, DiscriminantClass};
use ecrep_core::numerics::{is_prime_u64, make_context, CurveParams, XComplex};
use ecrep_core::repr::qr;

fn small_prime() -> impl Strategy<Value = u64> {
    (2u64..=199).prop_filter("need a prime modulus", |&p| is_prime_u64(p))
}

fn odd_prime() -> impl Strategy<Value = u64> {
    (3u64..=61).prop_filter("need an odd prime modulus", |&p| is_prime_u64(p))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// However f and p are chosen, (Q, R) lands on the unit circle.
    #[test]
    fn unit_point_stays_on_the_circle(p in small_prime(), f in 0u64..1000) {
        let ctx = make_context(96).unwrap();
        let point = qr(&Integer::from(f % p), p, &ctx).unwrap();
        let miss = (XComplex::new(point.q, point.r).norm_sqr() - 1i64).abs();
        prop_assert!(miss <= &ctx.epsilon() * 16i64, "off circle by {}", miss.to_f64());
    }

    /// The character-sum count and brute-force enumeration never disagree.
    #[test]
    fn character_count_matches_enumeration(p in odd_prime(), a in -20i64..=20, b in -20i64..=20) {
        let curve = CurveParams::new(a, b, p);
        prop_assume!(discriminant_class(&curve) != DiscriminantClass::Singular);
        let naive = count_naive(&curve, false).unwrap().n_p;
        let via_symbol = count_legendre(&curve).unwrap().n_p;
        prop_assert_eq!(naive, via_symbol);
    }
}
