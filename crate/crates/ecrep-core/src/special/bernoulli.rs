//! Bernoulli numbers as exact rationals.

use std::sync::{LazyLock, RwLock};

use rug::{Complete, Integer, Rational};

// Grown on demand, never shrunk; the recurrence below fills it in order.
static CACHE: LazyLock<RwLock<Vec<Rational>>> = LazyLock::new(|| {
    RwLock::new(vec![Rational::from(1), Rational::from((-1, 2))])
});

/// `B_n` in the convention with `B_1 = -1/2` (the one the defining
/// recurrence `sum_k C(n+1,k) B_k = 0` produces).
///
/// Values are exact and memoized. Odd indices above 1 are zero; even values
/// come out of the recurrence, so `bernoulli(2) = 1/6`,
/// `bernoulli(4) = -1/30`, and so on.
pub fn bernoulli(n: u32) -> Rational {
    {
        let cache = CACHE.read().unwrap();
        if let Some(b) = cache.get(n as usize) {
            return b.clone();
        }
    }
    let mut cache = CACHE.write().unwrap();
    while cache.len() <= n as usize {
        let m = cache.len() as u32;
        if m % 2 == 1 {
            // B_odd = 0 for odd m >= 3; skipping the dead sums matters once
            // the zeta tail corrections start asking for B_200 and up.
            cache.push(Rational::new());
            continue;
        }
        let mut sum = Rational::new();
        for (k, bk) in cache.iter().enumerate() {
            if bk.is_zero() {
                continue;
            }
            let c = Integer::binomial_u(m + 1, k as u32).complete();
            sum += bk.clone() * c;
        }
        sum /= -Rational::from(m + 1);
        cache.push(sum);
    }
    cache[n as usize].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_values() {
        assert_eq!(bernoulli(0), Rational::from(1));
        assert_eq!(bernoulli(1), Rational::from((-1, 2)));
        assert_eq!(bernoulli(2), Rational::from((1, 6)));
        assert_eq!(bernoulli(3), Rational::from(0));
        assert_eq!(bernoulli(4), Rational::from((-1, 30)));
        assert_eq!(bernoulli(12), Rational::from((-691, 2730)));
    }

    #[test]
    fn odd_values_vanish() {
        for n in (3..40).step_by(2) {
            assert!(bernoulli(n).is_zero(), "B_{n} should be zero");
        }
    }

    #[test]
    fn generating_function_partial_sum() {
        // sum_{n<=40} B_n z^n / n! should reproduce z/(e^z - 1) at z = 1/2
        // to well below the truncation tail.
        use crate::numerics::XReal;
        let prec = 160;
        let z = XReal::from_ratio(prec, 1, 2);
        let mut sum = XReal::zero(prec);
        let mut zpow = XReal::from_i64(prec, 1);
        let mut fact = Integer::from(1);
        for n in 0..=40u32 {
            if n > 0 {
                zpow = zpow * &z;
                fact *= n;
            }
            let coeff = bernoulli(n) / Rational::from(&fact);
            sum = sum + XReal::from_rational(prec, &coeff) * &zpow;
        }
        let direct = &z / z.exp_m1();
        let tol = XReal::from_i64(prec, 1).scale2(-100);
        assert!((sum - direct).abs() < tol);
    }
}
