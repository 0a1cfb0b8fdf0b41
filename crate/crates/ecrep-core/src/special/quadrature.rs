//! Adaptive Gauss–Legendre quadrature at extended precision.
//!
//! Nodes and weights are found once per (order, precision) pair by Newton
//! iteration on the Legendre polynomial, starting from the classical cosine
//! estimates; the adaptive driver repeatedly bisects whichever panel shows
//! the largest two-level discrepancy until the summed discrepancies fit the
//! tolerance budget.

use std::collections::{BinaryHeap, HashMap};
use std::sync::{Arc, LazyLock, RwLock};

use crate::error::{Error, Result};
use crate::numerics::XReal;

/// Quadrature order used by the crate's integrals; exact through degree 31.
pub const GL_ORDER: usize = 16;

/// Hard ceiling on bisection depth before giving up.
const MAX_DEPTH: u32 = 300;

/// Hard ceiling on live panels before giving up.
const MAX_PANELS: usize = 50_000;

struct GlRule {
    /// Nodes in (-1, 1), descending.
    nodes: Vec<XReal>,
    weights: Vec<XReal>,
}

static RULES: LazyLock<RwLock<HashMap<(usize, u32), Arc<GlRule>>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// `(P_n(x), P'_n(x))` by the three-term recurrence.
fn legendre_and_deriv(n: usize, x: &XReal) -> (XReal, XReal) {
    let prec = x.prec();
    let mut pm1 = XReal::from_i64(prec, 1); // P_0
    let mut p = x.clone(); // P_1
    for k in 1..n {
        // (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}
        let next = (x * &p * (2 * k as i64 + 1) - &pm1 * (k as i64)) / (k as i64 + 1);
        pm1 = std::mem::replace(&mut p, next);
    }
    // P'_n = n (x P_n - P_{n-1}) / (x^2 - 1)
    let deriv = (x * &p - &pm1) * (n as i64) / (x.square() - 1i64);
    (p, deriv)
}

fn build_rule(n: usize, prec: u32) -> GlRule {
    let work = prec + 32;
    let mut nodes = vec![XReal::zero(prec); n];
    let mut weights = vec![XReal::zero(prec); n];
    let newton_floor = XReal::from_i64(work, 1).scale2(-(work as i32 - 8));
    for i in 0..n.div_ceil(2) {
        let guess = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut x = XReal::from_f64(work, guess);
        let mut last_step = XReal::from_i64(work, 1);
        for _ in 0..200 {
            let (p, dp) = legendre_and_deriv(n, &x);
            let step = p / dp;
            x = x - &step;
            if step.abs() < newton_floor {
                break;
            }
            // Stalled at the rounding floor: stop rather than oscillate.
            if step.abs() == last_step {
                break;
            }
            last_step = step.abs();
        }
        let (_, dp) = legendre_and_deriv(n, &x);
        let w = XReal::from_i64(work, 2) / ((XReal::from_i64(work, 1) - x.square()) * dp.square());
        nodes[i] = x.with_prec(prec);
        weights[i] = w.with_prec(prec);
        nodes[n - 1 - i] = -&nodes[i];
        weights[n - 1 - i] = weights[i].clone();
    }
    if n % 2 == 1 {
        // The middle node is exactly zero by symmetry.
        let mid = n / 2;
        let x = XReal::zero(work);
        let (_, dp) = legendre_and_deriv(n, &x);
        nodes[mid] = XReal::zero(prec);
        weights[mid] = (XReal::from_i64(work, 2) / dp.square()).with_prec(prec);
    }
    GlRule { nodes, weights }
}

fn rule(n: usize, prec: u32) -> Arc<GlRule> {
    if let Some(r) = RULES.read().unwrap().get(&(n, prec)) {
        return Arc::clone(r);
    }
    let built = Arc::new(build_rule(n, prec));
    RULES.write().unwrap().entry((n, prec)).or_insert_with(|| Arc::clone(&built));
    // Always return the cached instance so concurrent builders agree.
    Arc::clone(RULES.read().unwrap().get(&(n, prec)).unwrap())
}

fn panel<F: Fn(&XReal) -> XReal>(f: &F, rule: &GlRule, a: &XReal, b: &XReal) -> XReal {
    let half = (b - a).scale2(-1);
    let mid = (a + b).scale2(-1);
    let mut acc = XReal::zero(half.prec());
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        acc = acc + w * f(&(&mid + &half * x));
    }
    acc * half
}

struct Panel {
    a: XReal,
    b: XReal,
    /// Two-panel refinement over `[a, b]`; the halves are kept separately so
    /// a later split can reuse each as its child's coarse level.
    left: XReal,
    right: XReal,
    /// |left + right - single-panel estimate|.
    err: XReal,
    depth: u32,
    seq: u64,
}

impl Panel {
    /// Heap key: largest discrepancy first, insertion order breaking ties so
    /// the whole procedure is deterministic.
    fn key(&self) -> (f64, std::cmp::Reverse<u64>) {
        (self.err.to_f64(), std::cmp::Reverse(self.seq))
    }
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == std::cmp::Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let (e, s) = self.key();
        let (oe, os) = other.key();
        e.total_cmp(&oe).then(s.cmp(&os))
    }
}

/// Integrates `f` over `[a, b]`, bisecting the panel with the worst
/// two-level agreement until the summed discrepancies drop below `tol`.
///
/// Fails with [`Error::TruncationFailure`] if the budget is still unmet when
/// a panel hits the depth ceiling or the panel count blows up.
pub fn integrate_adaptive<F>(f: F, a: &XReal, b: &XReal, tol: &XReal, prec: u32) -> Result<XReal>
where
    F: Fn(&XReal) -> XReal,
{
    if !tol.is_finite() || !(tol > &XReal::zero(64)) {
        return Err(Error::DomainError { what: "integrate_adaptive: tol must be positive".into() });
    }
    let rl = rule(GL_ORDER, prec);
    let tol = tol.with_prec(prec);
    let mut seq = 0u64;
    let mut subdivide = |a: XReal, b: XReal, coarse: &XReal, depth: u32| {
        let mid = (&a + &b).scale2(-1);
        let left = panel(&f, &rl, &a, &mid);
        let right = panel(&f, &rl, &mid, &b);
        let err = (&left + &right - coarse).abs();
        seq += 1;
        Panel { a, b, left, right, err, depth, seq }
    };

    let a = a.with_prec(prec);
    let b = b.with_prec(prec);
    let coarse = panel(&f, &rl, &a, &b);
    let mut heap = BinaryHeap::new();
    let first = subdivide(a, b, &coarse, 0);
    let mut total_err = first.err.clone();
    heap.push(first);
    // Fully converged panels get parked so the heap holds improvable ones.
    let mut settled: Vec<Panel> = Vec::new();

    while total_err > tol {
        if heap.len() + settled.len() > MAX_PANELS {
            return Err(Error::TruncationFailure {
                terms: (heap.len() + settled.len()) as u64,
                tail_bound: total_err.to_decimal(),
            });
        }
        let worst = heap.pop().expect("positive total error implies a live panel");
        let mid = (&worst.a + &worst.b).scale2(-1);
        if worst.depth >= MAX_DEPTH || !(mid > worst.a) || !(mid < worst.b) {
            return Err(Error::TruncationFailure {
                terms: worst.depth as u64,
                tail_bound: total_err.to_decimal(),
            });
        }
        total_err = total_err - &worst.err;
        let children = [
            (worst.a.clone(), mid.clone(), &worst.left),
            (mid.clone(), worst.b.clone(), &worst.right),
        ];
        for (lo, hi, coarse) in children {
            let child = subdivide(lo, hi, coarse, worst.depth + 1);
            if child.err.is_zero() {
                settled.push(child);
            } else {
                total_err = total_err + &child.err;
                heap.push(child);
            }
        }
    }

    let mut acc = XReal::zero(prec);
    for p in settled.iter().chain(heap.iter()) {
        acc = acc + &p.left + &p.right;
    }
    Ok(acc)
}
