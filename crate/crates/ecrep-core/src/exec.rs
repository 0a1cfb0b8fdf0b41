//! Deterministic work distribution.
//!
//! Long reductions are split into fixed-size chunks (a crate constant, never
//! derived from the worker count), each chunk is reduced sequentially, and
//! the per-chunk results are folded in index order. Workers only decide *who*
//! computes a chunk, never *what* is summed with what — so the result is
//! bit-for-bit identical at any worker count.

use std::ops::Range;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

/// Items per chunk for parallel reductions.
pub const CHUNK_LEN: u64 = 32;

/// How many OS threads a parallel reduction may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExecPolicy {
    workers: usize,
}

impl ExecPolicy {
    /// A policy with exactly `workers` threads (clamped to at least one).
    pub fn new(workers: usize) -> Self {
        ExecPolicy { workers: workers.max(1) }
    }

    /// Single-threaded execution.
    pub fn sequential() -> Self {
        ExecPolicy { workers: 1 }
    }

    pub fn workers(&self) -> usize {
        self.workers
    }
}

impl Default for ExecPolicy {
    /// Uses the machine's available parallelism, capped at 8 threads — the
    /// reductions here saturate memory bandwidth long before they run out of
    /// arithmetic.
    fn default() -> Self {
        let n = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
        ExecPolicy { workers: n.min(8) }
    }
}

fn chunk_ranges(len: u64) -> Vec<Range<u64>> {
    let mut out = Vec::with_capacity(len.div_ceil(CHUNK_LEN) as usize);
    let mut start = 0;
    while start < len {
        let end = (start + CHUNK_LEN).min(len);
        out.push(start..end);
        start = end;
    }
    out
}

/// Reduces `map(chunk)` over all fixed-size chunks of `0..len`, folding the
/// chunk values in index order starting from `init`.
///
/// `map` must itself be deterministic; everything else about the reduction
/// order is fixed by construction.
pub fn chunked_reduce<T, M, R>(len: u64, policy: &ExecPolicy, map: M, reduce: R, init: T) -> T
where
    T: Send,
    M: Fn(Range<u64>) -> T + Sync,
    R: Fn(T, T) -> T,
{
    let chunks = chunk_ranges(len);
    if chunks.is_empty() {
        return init;
    }
    let workers = policy.workers().min(chunks.len());
    if workers == 1 {
        // Same chunk granularity as the parallel path so both fold the exact
        // same partial values in the exact same order.
        return chunks.into_iter().map(map).fold(init, reduce);
    }

    let slots: Mutex<Vec<Option<T>>> = Mutex::new((0..chunks.len()).map(|_| None).collect());
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= chunks.len() {
                    break;
                }
                let value = map(chunks[i].clone());
                slots.lock().unwrap()[i] = Some(value);
            });
        }
    });
    let filled = slots.into_inner().unwrap();
    filled
        .into_iter()
        .map(|v| v.expect("every chunk was assigned"))
        .fold(init, reduce)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::XReal;

    #[test]
    fn empty_range_returns_init() {
        let policy = ExecPolicy::new(4);
        let got = chunked_reduce(0, &policy, |_| 1u64, |a, b| a + b, 7u64);
        assert_eq!(got, 7);
    }

    #[test]
    fn worker_count_does_not_change_float_sum() {
        // Sum of 1/(i+1) at 96 bits: rounding makes addition non-associative,
        // so this only passes if the fold order is genuinely fixed.
        let run = |workers| {
            let policy = ExecPolicy::new(workers);
            chunked_reduce(
                1000,
                &policy,
                |r| {
                    let mut acc = XReal::zero(96);
                    for i in r {
                        acc = acc + XReal::from_ratio(96, 1, i + 1);
                    }
                    acc
                },
                |a, b| a + b,
                XReal::zero(96),
            )
        };
        let s1 = run(1);
        let s4 = run(4);
        let s8 = run(8);
        assert_eq!(s1, s4);
        assert_eq!(s1, s8);
    }

    #[test]
    fn chunk_boundaries_cover_everything_once() {
        let policy = ExecPolicy::new(3);
        let n = 2 * CHUNK_LEN + 5;
        let total = chunked_reduce(n, &policy, |r| r.end - r.start, |a, b| a + b, 0);
        assert_eq!(total, n);
    }
}
