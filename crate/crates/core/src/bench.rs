//! Timing harness for `sub_k` on large synthetic degree sequences.

use std::time::{Duration, Instant};

use rand::{rngs::StdRng, Rng, SeedableRng};

use crate::error::Result;
use crate::invariants::{sub_k, DegreeSequence};

/// Allowed slack between the time ratio and the size ratio of consecutive sizes.
pub const SCALING_SLACK: f64 = 3.0;

pub const DEFAULT_SIZES: [usize; 3] = [100_000, 1_000_000, 10_000_000];

/// Uniform random degrees in `0..n`, unsorted.
pub fn synthetic_degrees(n: usize, seed: u64) -> Vec<u32> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..n).map(|_| rng.random_range(0..n as u32)).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub k: u64,
    pub sub_k: usize,
    /// Best of the repetitions: counting sort, prefix sums and the scan.
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    /// `(n_small, n_large, time ratio)` for each consecutive pair of sizes.
    pub ratios: Vec<(usize, usize, f64)>,
    pub scaling_ok: bool,
}

/// Times sort-plus-scan once; returns the value and the elapsed wall time.
pub fn time_sub_k(degrees: &[u32], k: u64) -> Result<(usize, Duration)> {
    let start = Instant::now();
    let seq = DegreeSequence::from_degrees(degrees)?;
    let value = sub_k(&seq, k)?;
    let elapsed = start.elapsed();
    drop(seq);
    Ok((value, elapsed))
}

pub fn run(sizes: &[usize], k: u64, repetitions: usize) -> Result<BenchReport> {
    let mut rows = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let degrees = synthetic_degrees(n, n as u64);
        let mut best = Duration::MAX;
        let mut value = 0;
        for _ in 0..repetitions.max(1) {
            let (v, t) = time_sub_k(&degrees, k)?;
            value = v;
            best = best.min(t);
        }
        rows.push(BenchRow {
            n,
            k,
            sub_k: value,
            elapsed: best,
        });
    }
    let ratios: Vec<(usize, usize, f64)> = rows
        .windows(2)
        .map(|w| {
            let t = w[1].elapsed.as_secs_f64() / w[0].elapsed.as_secs_f64().max(1e-9);
            (w[0].n, w[1].n, t)
        })
        .collect();
    let scaling_ok = ratios
        .iter()
        .all(|&(a, b, t)| t <= SCALING_SLACK * b as f64 / a as f64);
    Ok(BenchReport {
        rows,
        ratios,
        scaling_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_all_zero_sequence() {
        let (v, t) = time_sub_k(&[0; 10], 1).unwrap();
        assert_eq!(v, 10);
        assert!(t < Duration::from_millis(1));
    }

    #[test]
    fn synthetic_is_deterministic_and_in_range() {
        let a = synthetic_degrees(1000, 5);
        assert_eq!(a, synthetic_degrees(1000, 5));
        assert!(a.iter().all(|&d| d < 1000));
    }

    #[test]
    fn smoke_run() {
        let rep = run(&[1000, 10_000], 1, 2).unwrap();
        assert_eq!(rep.rows.len(), 2);
        assert_eq!(rep.ratios.len(), 1);
    }
}
