//! Named verification suites: each one sweeps a family of measurable claims
//! from the library — closed forms against series, analytic counts against
//! enumeration, exact identities against rational arithmetic — and reports
//! per-case outcomes with the worst observed deviation instead of a bare
//! boolean. Library errors inside a case mark that case failed; they never
//! abort the sweep.

use rug::{Integer, Rational};

use crate::counting::{
    count_expsum, count_legendre, count_naive, count_scaled_power, count_split_range,
    discriminant_class, gauss_sum_closed, gauss_sum_direct, hasse_check, DiscriminantClass,
};
use crate::error::{Error, Result};
use crate::exec::ExecPolicy;
use crate::fracpart::{
    floor_via_expsum, frac_via_expsum, lagrange_root_count, stepping_identities_hold, frac_lower_bound,
};
use crate::identity::identity_check;
use crate::numerics::{
    is_prime_u64, legendre_symbol, make_context, unit_exp, CurveParams, PrecisionContext,
    XComplex, XReal,
};
use crate::repr::{q1r1, qr, s_closed, s_series, w_closed, w_series};
use crate::special::{zeta_neg, zeta_neg_via_functional, zeta_pos};

/// One measured claim.
#[derive(Debug, Clone)]
pub struct CaseResult {
    pub label: String,
    pub passed: bool,
    /// Human-readable summary: worst deviation, tolerance, or error text.
    pub detail: String,
}

/// All cases of one named suite.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub cases: Vec<CaseResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.passed)
    }
}

/// Knobs shared by every suite. `max_p` caps each grid's modulus without
/// changing its shape.
#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub bits: u32,
    pub max_p: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { bits: 192, max_p: 101 }
    }
}

/// Suite names accepted by [`run_suites`], in execution order.
pub const SUITE_NAMES: [&str; 7] =
    ["numerics", "zeta", "repr", "gauss", "counting", "fracpart", "identity"];

/// Runs one named suite, or all of them for `"all"`.
pub fn run_suites(
    name: &str,
    opts: &SuiteOptions,
    policy: &ExecPolicy,
) -> Result<Vec<SuiteReport>> {
    let ctx = make_context(opts.bits)?;
    let run = |suite: &str| -> Result<SuiteReport> {
        Ok(match suite {
            "numerics" => suite_numerics(&ctx),
            "zeta" => suite_zeta(&ctx),
            "repr" => suite_repr(&ctx, opts),
            "gauss" => suite_gauss(&ctx, opts),
            "counting" => suite_counting(&ctx, opts, policy),
            "fracpart" => suite_fracpart(&ctx, opts),
            "identity" => suite_identity(&ctx, opts, policy),
            other => {
                return Err(Error::DomainError {
                    what: format!(
                        "unknown suite '{other}' (expected one of {}, or all)",
                        SUITE_NAMES.join(", ")
                    ),
                })
            }
        })
    };
    if name == "all" {
        SUITE_NAMES.iter().map(|s| run(s)).collect()
    } else {
        Ok(vec![run(name)?])
    }
}

fn case(label: &str, passed: bool, detail: String) -> CaseResult {
    CaseResult { label: label.to_string(), passed, detail }
}

fn dev_case(label: &str, worst: &XReal, tol: &XReal) -> CaseResult {
    case(
        label,
        worst <= tol,
        format!("worst deviation {:.3e} (tolerance {:.3e})", worst.to_f64(), tol.to_f64()),
    )
}

fn max_into(worst: &mut XReal, candidate: XReal) {
    if candidate > *worst {
        *worst = candidate;
    }
}

fn primes_through(limit: u64) -> Vec<u64> {
    (2..=limit).filter(|&p| is_prime_u64(p)).collect()
}

fn odd_primes_through(limit: u64) -> Vec<u64> {
    (3..=limit).filter(|&p| is_prime_u64(p)).collect()
}

fn tol_1e(bits: u32, exp: i32) -> XReal {
    XReal::from_i64(bits.max(64), 10).pow_i(exp as i64)
}

fn suite_numerics(ctx: &PrecisionContext) -> SuiteReport {
    let mut cases = Vec::new();

    // Unit-circle samples really sit on the circle.
    let mut worst = XReal::zero(64);
    for j in 0..97i64 {
        let z = unit_exp(&XReal::from_ratio(ctx.bits(), j, 97), ctx);
        max_into(&mut worst, (z.norm_sqr() - XReal::from_i64(64, 1)).abs());
    }
    cases.push(dev_case("unit_exp modulus over j/97", &worst, &ctx.epsilon().scale2(3)));

    // Binary powering agrees with the angle-reduced exponential.
    let base = unit_exp(&XReal::from_ratio(ctx.bits(), 1, 17), ctx);
    let direct = unit_exp(&XReal::from_ratio(ctx.bits(), (1000 % 17) as i64, 17), ctx);
    let gap = (&base.pow_unit(1000) - &direct).modulus();
    cases.push(dev_case("pow_unit(1000) vs reduced angle", &gap, &(&ctx.epsilon() * 64i64)));

    // Legendre symbol is completely multiplicative on units.
    let mut ok = true;
    for p in [13u64, 29] {
        for m in 1..p {
            for n in 1..p {
                let lhs = legendre_symbol(&Integer::from(m * n), p).unwrap();
                let rhs = legendre_symbol(&Integer::from(m), p).unwrap()
                    * legendre_symbol(&Integer::from(n), p).unwrap();
                ok &= lhs == rhs;
            }
        }
    }
    cases.push(case(
        "legendre multiplicativity p in {13,29}",
        ok,
        if ok { "all products agree".into() } else { "a product disagreed".into() },
    ));

    SuiteReport { suite: "numerics", cases }
}

fn suite_zeta(ctx: &PrecisionContext) -> SuiteReport {
    let mut cases = Vec::new();
    let eps = ctx.epsilon();

    let mut worst = XReal::zero(64);
    let mut failed: Option<String> = None;
    for n in 1..=19u32 {
        match (zeta_neg(n), zeta_neg_via_functional(n, ctx)) {
            (Ok(exact), Ok(via)) => {
                let gap = (XReal::from_rational(ctx.bits(), &exact) - via).abs();
                max_into(&mut worst, gap);
            }
            (a, b) => failed = Some(format!("n={n}: {:?} / {:?}", a.err(), b.err())),
        }
    }
    cases.push(match failed {
        None => dev_case("negative zeta vs functional equation, n <= 19", &worst, &eps),
        Some(msg) => case("negative zeta vs functional equation, n <= 19", false, msg),
    });

    let pi = ctx.pi();
    let z2 = (zeta_pos(2, ctx).unwrap() - pi.square() / 6i64).abs();
    let z4 = (zeta_pos(4, ctx).unwrap() - pi.square().square() / 90i64).abs();
    let worst = if z2 > z4 { z2 } else { z4 };
    cases.push(dev_case("zeta(2), zeta(4) closed forms", &worst, &eps));

    let trivial_zeros = (1..=9u32).all(|n| zeta_neg(2 * n).map_or(false, |q| q == 0));
    cases.push(case(
        "zeta(-2n) = 0 exactly, n <= 9",
        trivial_zeros,
        "exact rational zeros".into(),
    ));

    SuiteReport { suite: "zeta", cases }
}

fn suite_repr(ctx: &PrecisionContext, opts: &SuiteOptions) -> SuiteReport {
    let mut cases = Vec::new();

    // Series vs closed form for the scaled sum.
    let mut worst = XReal::zero(64);
    let mut err: Option<String> = None;
    for p in odd_primes_through(13.min(opts.max_p)) {
        for f in 0..p as i64 {
            let fi = Integer::from(f);
            match (s_series(&fi, p, ctx, 100_000), s_closed(&fi, p, ctx)) {
                (Ok((series, _)), Ok(closed)) => max_into(&mut worst, (series - closed).abs()),
                (a, b) => {
                    err = Some(format!("f={f}, p={p}: {:?} {:?}", a.err(), b.err()));
                }
            }
        }
    }
    cases.push(match err {
        None => dev_case("S series vs closed, p <= 13", &worst, &tol_1e(ctx.bits(), -25)),
        Some(msg) => case("S series vs closed, p <= 13", false, msg),
    });

    // W series vs closed form on the r = j/64 grid.
    let mut worst = XReal::zero(64);
    for j in 0..64i64 {
        let r = XReal::from_ratio(ctx.bits(), j, 64);
        let series = w_series(&r, ctx, 100_000).map(|(v, _)| v);
        let closed = w_closed(&r, ctx);
        match (series, closed) {
            (Ok(s), Ok(c)) => max_into(&mut worst, (s - c).abs()),
            _ => max_into(&mut worst, XReal::from_i64(64, 1)),
        }
    }
    cases.push(dev_case("W series vs closed on j/64", &worst, &tol_1e(ctx.bits(), -25)));

    // Unit points: on the circle and equal to the true exponential.
    let tol = &ctx.epsilon() * 16i64;
    let mut worst_circle = XReal::zero(64);
    let mut worst_recon = XReal::zero(64);
    for p in primes_through(opts.max_p.min(101)) {
        for x in 0..p {
            let point = match qr(&Integer::from(x), p, ctx) {
                Ok(pt) => pt,
                Err(_) => {
                    worst_circle = XReal::from_i64(64, 1);
                    continue;
                }
            };
            let z = XComplex::new(point.q, point.r);
            max_into(&mut worst_circle, (z.norm_sqr() - XReal::from_i64(64, 1)).abs());
            let target = unit_exp(&XReal::from_ratio(ctx.bits(), -(x as i64), p), ctx);
            max_into(&mut worst_recon, (&z - &target).modulus());
        }
    }
    cases.push(dev_case("Q²+R² = 1 over f = x, x < p", &worst_circle, &tol));
    cases.push(dev_case("(Q,R) vs exp(-2πix/p)", &worst_recon, &tol));

    // Fractional-argument points against the same exponential.
    let mut worst = XReal::zero(64);
    for j in 0..64i64 {
        let r = XReal::from_ratio(ctx.bits(), j, 64);
        match q1r1(&r, ctx) {
            Ok(pt) => {
                let target = unit_exp(&-&r, ctx);
                max_into(&mut worst, (&XComplex::new(pt.q, pt.r) - &target).modulus());
            }
            Err(_) => max_into(&mut worst, XReal::from_i64(64, 1)),
        }
    }
    cases.push(dev_case("(Q1,R1) vs exp(-2πir) on j/64", &worst, &tol));

    SuiteReport { suite: "repr", cases }
}

fn suite_gauss(ctx: &PrecisionContext, opts: &SuiteOptions) -> SuiteReport {
    let mut cases = Vec::new();
    let mut worst_pair = XReal::zero(64);
    let mut worst_mag = XReal::zero(64);
    let mut max_tol = XReal::zero(64);
    for p in odd_primes_through(opts.max_p.min(101)) {
        let sqrt_p = XReal::from_u64(ctx.bits() + 32, p).sqrt();
        let tol = &ctx.epsilon() * (8 * p);
        if tol > max_tol {
            max_tol = tol;
        }
        for m in 1..p {
            match (gauss_sum_direct(m, p, ctx), gauss_sum_closed(m, p, ctx)) {
                (Ok(d), Ok(c)) => {
                    max_into(&mut worst_pair, (&d.value - &c.value).modulus());
                    max_into(&mut worst_mag, (d.value.modulus() - &sqrt_p).abs());
                }
                _ => max_into(&mut worst_pair, XReal::from_i64(64, 1)),
            }
        }
    }
    cases.push(dev_case("direct vs closed, p <= cap", &worst_pair, &max_tol));
    cases.push(dev_case("|direct| vs sqrt(p)", &worst_mag, &max_tol));
    SuiteReport { suite: "gauss", cases }
}

fn suite_counting(ctx: &PrecisionContext, opts: &SuiteOptions, policy: &ExecPolicy) -> SuiteReport {
    let mut cases = Vec::new();

    // Exact route equivalence, with the Hasse corridor on the side.
    let mut ok = true;
    let mut hasse_ok = true;
    let mut detail = String::from("all counts equal");
    for p in odd_primes_through(opts.max_p.min(97)) {
        for a in 0..=5i64 {
            for b in 0..=5i64 {
                let curve = CurveParams::new(a, b, p);
                if discriminant_class(&curve) == DiscriminantClass::Singular {
                    continue;
                }
                let naive = count_naive(&curve, false).map(|r| r.n_p);
                let leg = count_legendre(&curve).map(|r| r.n_p);
                match (naive, leg) {
                    (Ok(n), Ok(l)) => {
                        if n != l {
                            ok = false;
                            detail = format!("mismatch at a={a}, b={b}, p={p}: {n} vs {l}");
                        }
                        hasse_ok &= hasse_check(n, p);
                    }
                    (n, l) => {
                        ok = false;
                        detail = format!("error at a={a}, b={b}, p={p}: {:?} {:?}", n, l);
                    }
                }
            }
        }
    }
    cases.push(case("legendre = naive, p <= 97, a,b <= 5", ok, detail));
    cases.push(case(
        "hasse corridor on the same grid",
        hasse_ok,
        "(n-p-1)² < 4p everywhere".into(),
    ));

    // Analytic routes against enumeration.
    let residual_tol = tol_1e(ctx.bits(), -9);
    let mut worst_res = XReal::zero(64);
    let mut ok = true;
    let mut detail = String::from("all counts equal");
    for p in odd_primes_through(opts.max_p.min(31)).into_iter().filter(|&p| p >= 5) {
        for a in 0..=3i64 {
            for b in 0..=3i64 {
                let curve = CurveParams::new(a, b, p);
                if discriminant_class(&curve) == DiscriminantClass::Singular {
                    continue;
                }
                let naive = count_naive(&curve, false).unwrap().n_p;
                match count_expsum(&curve, ctx, policy) {
                    Ok(r) => {
                        if r.n_p != naive {
                            ok = false;
                            detail = format!("mismatch at a={a}, b={b}, p={p}");
                        }
                        max_into(&mut worst_res, r.residual);
                    }
                    Err(e) => {
                        ok = false;
                        detail = format!("a={a}, b={b}, p={p}: {e}");
                    }
                }
            }
        }
    }
    let res_line = format!("worst residual {:.3e}", worst_res.to_f64());
    cases.push(case(
        "expsum = naive, p <= 31, a,b <= 3",
        ok && worst_res <= residual_tol,
        if ok { res_line } else { detail },
    ));

    let mut ok = true;
    let mut detail = String::from("all counts equal");
    for p in [5u64, 7, 11, 13].into_iter().filter(|&p| p <= opts.max_p) {
        for a in 0..=2i64 {
            for b in 0..=2i64 {
                let curve = CurveParams::new(a, b, p);
                if discriminant_class(&curve) == DiscriminantClass::Singular {
                    continue;
                }
                let naive = count_naive(&curve, false).unwrap().n_p;
                match count_scaled_power(&curve, ctx, policy) {
                    Ok(r) if r.n_p == naive => {}
                    Ok(r) => {
                        ok = false;
                        detail = format!("a={a}, b={b}, p={p}: {} vs {naive}", r.n_p);
                    }
                    Err(e) => {
                        ok = false;
                        detail = format!("a={a}, b={b}, p={p}: {e}");
                    }
                }
            }
        }
    }
    cases.push(case("scaled-power = naive, p in {5,7,11,13}, a,b <= 2", ok, detail));

    let mut ok = true;
    let mut detail = String::from("all counts equal");
    for p in odd_primes_through(opts.max_p.min(31)).into_iter().filter(|&p| p >= 5) {
        for a in 0..=3i64 {
            for b in 0..=3i64 {
                let curve = CurveParams::new(a, b, p);
                if discriminant_class(&curve) == DiscriminantClass::Singular {
                    continue;
                }
                let naive = count_naive(&curve, false).unwrap().n_p;
                match count_split_range(&curve, ctx, policy) {
                    Ok(r) if r.n_p == naive => {}
                    Ok(r) => {
                        ok = false;
                        detail = format!("a={a}, b={b}, p={p}: {} vs {naive}", r.n_p);
                    }
                    Err(e) => {
                        ok = false;
                        detail = format!("a={a}, b={b}, p={p}: {e}");
                    }
                }
            }
        }
    }
    cases.push(case("split-range = naive, p <= 31, a,b <= 3", ok, detail));

    SuiteReport { suite: "counting", cases }
}

fn suite_fracpart(ctx: &PrecisionContext, opts: &SuiteOptions) -> SuiteReport {
    let mut cases = Vec::new();

    let mut worst = XReal::zero(64);
    let mut ok = true;
    let mut detail = String::from("floors agree with integer division");
    for p in [2u64, 3, 7, 11, 64, 101].into_iter().filter(|&p| p <= opts.max_p.max(2)) {
        for n in (1..=30).chain([p, 2 * p, 10 * p + 1]) {
            match floor_via_expsum(n, p, ctx) {
                Ok(rep) => {
                    if rep.floor_value != n / p {
                        ok = false;
                        detail = format!("n={n}, p={p}: {} vs {}", rep.floor_value, n / p);
                    }
                    max_into(&mut worst, rep.deviation);
                }
                Err(e) => {
                    ok = false;
                    detail = format!("n={n}, p={p}: {e}");
                }
            }
        }
    }
    let line = format!("worst deviation {:.3e}", worst.to_f64());
    cases.push(case(
        "floor via double sum vs n div p",
        ok && worst <= tol_1e(ctx.bits(), -20),
        if ok { line } else { detail },
    ));

    let mut worst = XReal::zero(64);
    for p in [3u64, 7, 13].into_iter().filter(|&p| p <= opts.max_p.max(3)) {
        for f in 1..=40u64 {
            match frac_via_expsum(f, p, ctx) {
                Ok(v) => {
                    let exact = XReal::from_ratio(ctx.bits(), (f % p) as i64, p);
                    max_into(&mut worst, (v - exact).abs());
                }
                Err(_) => max_into(&mut worst, XReal::from_i64(64, 1)),
            }
        }
    }
    cases.push(dev_case("frac via double sum vs (f mod p)/p", &worst, &tol_1e(ctx.bits(), -20)));

    let mut ok = true;
    for p in [3u64, 5, 7, 11, 13] {
        for f in 2..=500u64 {
            ok &= stepping_identities_hold(f, p);
        }
    }
    cases.push(case(
        "fractional-part stepping identities, f <= 500",
        ok,
        "exact rational identities".into(),
    ));

    let mut ok = true;
    for p in [5u64, 7, 11, 13] {
        for f in 1..=200u64 {
            let bound = frac_lower_bound(f, p, ctx);
            let exact = Rational::from((f % p, p));
            ok &= bound.to_rational().map_or(false, |b| b <= exact);
        }
    }
    cases.push(case(
        "lower bound never exceeds {f/p}",
        ok,
        "one-sided after downward rounding".into(),
    ));

    let mut ok = true;
    for p in odd_primes_through(opts.max_p.min(31)) {
        for a in -3..=3i64 {
            for b in -3..=3i64 {
                ok &= matches!(lagrange_root_count(&CurveParams::new(a, b, p)), Ok(n) if n <= 3);
            }
        }
    }
    cases.push(case("cubic root counts stay <= 3", ok, "enumerated over the grid".into()));

    SuiteReport { suite: "fracpart", cases }
}

fn suite_identity(ctx: &PrecisionContext, opts: &SuiteOptions, policy: &ExecPolicy) -> SuiteReport {
    let mut worst_scaled = XReal::zero(64);
    let mut detail: Option<String> = None;
    for p in 2..=opts.max_p.min(101) {
        match identity_check(p, ctx, policy) {
            Ok(rep) => {
                // Normalize by p so one tolerance covers the whole sweep.
                let pr = XReal::from_u64(64, p);
                max_into(&mut worst_scaled, rep.abs_error / &pr);
                max_into(&mut worst_scaled, rep.q_sum.abs() / &pr);
                max_into(&mut worst_scaled, rep.r_sum.abs() / &pr);
            }
            Err(e) => detail = Some(format!("p={p}: {e}")),
        }
    }
    let c = match detail {
        None => dev_case(
            "zero sums and direct sum vs p, scaled by p",
            &worst_scaled,
            &tol_1e(ctx.bits(), -20),
        ),
        Some(msg) => case("zero sums and direct sum vs p, scaled by p", false, msg),
    };
    SuiteReport { suite: "identity", cases: vec![c] }
}
