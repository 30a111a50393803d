//! Degree-sequence invariants: the sub-k-domination number and the lower
//! bounds on the k-domination number that can be read off a degree sequence.
//!
//! Everything here is exact. Threshold tests are done in integers
//! (`k*t + S_t >= k*n` rather than `t + S_t/k >= n`) and fractional bounds are
//! returned as reduced rationals so comparisons with `sub_k` never round.

use num_integer::Integer;
use num_rational::Ratio;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::exact::caro_roditty_upper;
use crate::graph::Graph;

pub type Rational = Ratio<i64>;

/// Vertex degrees in non-increasing order with prefix sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSequence {
    degrees: Vec<u32>,
    /// `prefix[t] = d_1 + ... + d_t`, `prefix[0] = 0`.
    prefix: Vec<u64>,
}

impl DegreeSequence {
    pub fn from_graph(g: &Graph) -> Self {
        let raw: Vec<u32> = (0..g.order()).map(|v| g.degree(v) as u32).collect();
        let max = raw.iter().copied().max().unwrap_or(0);
        Self::from_sorted_unchecked(counting_sort_desc(&raw, max))
    }

    /// Sorts arbitrary-order degrees with a counting sort; each degree must lie in `0..n`.
    pub fn from_degrees(degrees: &[u32]) -> Result<Self> {
        let n = degrees.len();
        let max = degrees.iter().copied().max().unwrap_or(0);
        if n > 0 && max as usize >= n {
            return domain(format!("degree {max} impossible with {n} vertices"));
        }
        Ok(Self::from_sorted_unchecked(counting_sort_desc(degrees, max)))
    }

    /// Accepts an already non-increasing sequence.
    pub fn from_sorted(degrees: Vec<u32>) -> Result<Self> {
        if let Some(w) = degrees.windows(2).find(|w| w[0] < w[1]) {
            return domain(format!("sequence increases from {} to {}", w[0], w[1]));
        }
        if let Some(&d) = degrees.first() {
            if d as usize >= degrees.len() {
                return domain(format!("degree {d} impossible with {} vertices", degrees.len()));
            }
        }
        Ok(Self::from_sorted_unchecked(degrees))
    }

    fn from_sorted_unchecked(degrees: Vec<u32>) -> Self {
        let mut prefix = Vec::with_capacity(degrees.len() + 1);
        let mut acc = 0u64;
        prefix.push(0);
        for &d in &degrees {
            acc += d as u64;
            prefix.push(acc);
        }
        DegreeSequence { degrees, prefix }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    #[inline]
    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// `d_i` with 1-based `i`.
    #[inline]
    pub fn d(&self, i: usize) -> u32 {
        self.degrees[i - 1]
    }

    /// `S_t`, the sum of the `t` largest degrees.
    #[inline]
    pub fn prefix_sum(&self, t: usize) -> u64 {
        self.prefix[t]
    }

    pub fn max_degree(&self) -> u32 {
        self.degrees.first().copied().unwrap_or(0)
    }

    pub fn min_degree(&self) -> u32 {
        self.degrees.last().copied().unwrap_or(0)
    }

    /// Number of entries equal to `level`.
    pub fn count_at(&self, level: u32) -> usize {
        let hi = self.degrees.partition_point(|&d| d > level);
        let lo = self.degrees.partition_point(|&d| d >= level);
        lo - hi
    }

    pub fn edge_count(&self) -> u64 {
        self.prefix[self.len()] / 2
    }
}

/// Counting sort into non-increasing order; every value must be `<= max`.
pub fn counting_sort_desc(values: &[u32], max: u32) -> Vec<u32> {
    let mut counts = vec![0u32; max as usize + 1];
    for &v in values {
        counts[v as usize] += 1;
    }
    let mut out = Vec::with_capacity(values.len());
    for (level, &c) in counts.iter().enumerate().rev() {
        out.extend(std::iter::repeat_n(level as u32, c as usize));
    }
    out
}

fn check_k(k: u64) -> Result<()> {
    if k == 0 {
        return domain("k must be at least 1");
    }
    Ok(())
}

/// Least `t` with `t + S_t / k >= n`, found by one pass over the prefix sums.
pub fn sub_k(seq: &DegreeSequence, k: u64) -> Result<usize> {
    check_k(k)?;
    if seq.is_empty() {
        return domain("sub_k of an empty degree sequence");
    }
    let target = k * seq.len() as u64;
    let t = (1..=seq.len())
        .find(|&t| k * t as u64 + seq.prefix[t] >= target)
        .expect("t = n always meets the threshold");
    Ok(t)
}

/// Degree multiset stored as per-level counts.
///
/// Evaluates `sub_k` in O(Δ) and supports the one- and two-entry degree edits
/// caused by a single edge or vertex mutation, so criticality scans can avoid
/// re-sorting after every mutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeHistogram {
    counts: Vec<u64>,
    n: u64,
}

impl DegreeHistogram {
    pub fn from_graph(g: &Graph) -> Self {
        let mut counts = vec![0u64; g.max_degree() + 2];
        for v in 0..g.order() {
            counts[g.degree(v)] += 1;
        }
        DegreeHistogram {
            counts,
            n: g.order() as u64,
        }
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    fn bump(&mut self, level: usize, delta: i64) {
        if level >= self.counts.len() {
            self.counts.resize(level + 1, 0);
        }
        self.counts[level] = (self.counts[level] as i64 + delta) as u64;
    }

    /// Moves one vertex from degree `from` to degree `to`.
    pub fn move_vertex(&mut self, from: usize, to: usize) {
        self.bump(from, -1);
        self.bump(to, 1);
    }

    /// Removes a vertex of degree `degree` (its neighbors must be moved separately).
    pub fn remove_vertex(&mut self, degree: usize) {
        self.bump(degree, -1);
        self.n -= 1;
    }

    /// `sub_k` of the multiset; 0 for the null graph.
    pub fn sub_k(&self, k: u64) -> Result<u64> {
        check_k(k)?;
        let target = k * self.n;
        let (mut taken, mut sum) = (0u64, 0u64);
        for (level, &c) in self.counts.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            // Each vertex taken at this level raises k*t + S_t by k + level.
            let gap = target.saturating_sub(k * taken + sum);
            let need = gap.div_ceil(k + level as u64);
            if need <= c {
                return Ok(taken + need);
            }
            taken += c;
            sum += c * level as u64;
        }
        Ok(taken)
    }
}

/// `ceil(k n / (r + k))`, the value of `sub_k` on every `r`-regular graph of order `n`.
pub fn sub_k_regular(n: u64, r: u64, k: u64) -> Result<u64> {
    check_k(k)?;
    if n == 0 || r >= n {
        return domain(format!("no {r}-regular graph of order {n}"));
    }
    Ok((k * n).div_ceil(r + k))
}

/// Whether `sub_k(K_n) = gamma_k(K_n) = k`, which happens exactly when `n > (k-1)^2`.
pub fn kn_equality_threshold(n: u64, k: u64) -> Result<bool> {
    check_k(k)?;
    if k >= n {
        return domain(format!("k = {k} must be at most n - 1 = {}", n.saturating_sub(1)));
    }
    Ok(n > (k - 1) * (k - 1))
}

/// `k n / (Δ + k)` as an exact rational.
pub fn fink_jacobson_ratio(n: u64, max_degree: u64, k: u64) -> Result<Rational> {
    check_k(k)?;
    Ok(Rational::new((k * n) as i64, (max_degree + k) as i64))
}

/// Smallest integer meeting `k n / (Δ + k)`.
pub fn fink_jacobson_bound(n: u64, max_degree: u64, k: u64) -> Result<u64> {
    check_k(k)?;
    Ok((k * n).div_ceil(max_degree + k))
}

/// Degree-level parameters of the stratified bound for a stratum count `t`.
///
/// Strata are the consecutive levels `Δ, Δ-1, ..., Δ-t+1`, empty levels included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratifiedParams {
    pub t: usize,
    /// `level_counts[i-1] = n_{Δ+1-i}` for `i = 1..=t`.
    pub level_counts: Vec<u64>,
    /// `s_t`, vertices whose degree lies in one of the `t` top levels.
    pub s_t: usize,
    /// `Δ_t = d_{s_t + 1}`.
    pub delta_t: u32,
}

impl StratifiedParams {
    pub fn new(seq: &DegreeSequence, t: usize) -> Result<Self> {
        if t == 0 {
            return domain("stratum count t must be at least 1");
        }
        let max = seq.max_degree() as i64;
        let level_counts: Vec<u64> = (1..=t as i64)
            .map(|i| max + 1 - i)
            .map(|level| if level < 0 { 0 } else { seq.count_at(level as u32) as u64 })
            .collect();
        let s_t = level_counts.iter().sum::<u64>() as usize;
        if s_t + 1 > seq.len() {
            return Err(Error::Precondition(format!(
                "s_t + 1 = {} exceeds n = {}, so Δ_t is undefined",
                s_t + 1,
                seq.len()
            )));
        }
        Ok(StratifiedParams {
            t,
            level_counts,
            s_t,
            delta_t: seq.d(s_t + 1),
        })
    }
}

fn stratified_guard(seq: &DegreeSequence, s_t: usize) -> bool {
    s_t < seq.len() && s_t as u64 + seq.prefix_sum(s_t) < seq.len() as u64
}

fn stratified_value(seq: &DegreeSequence, k: u64, p: &StratifiedParams) -> Rational {
    let max = seq.max_degree() as i64;
    let delta_t = p.delta_t as i64;
    let correction: i64 = p
        .level_counts
        .iter()
        .enumerate()
        .map(|(idx, &count)| (max + 1 - delta_t - (idx as i64 + 1)) * count as i64)
        .sum();
    Rational::new(
        k as i64 * seq.len() as i64 - correction,
        k as i64 + delta_t,
    )
}

/// The stratified lower bound for stratum count `t`, as an exact rational.
///
/// Requires `s_t + S_{s_t} < n`; outside that regime no bound is claimed and a
/// precondition error is returned.
pub fn stratified_bound(seq: &DegreeSequence, k: u64, t: usize) -> Result<Rational> {
    check_k(k)?;
    let params = StratifiedParams::new(seq, t)?;
    if !stratified_guard(seq, params.s_t) {
        return Err(Error::Precondition(format!(
            "s_t + S_(s_t) = {} is not below n = {}",
            params.s_t as u64 + seq.prefix_sum(params.s_t),
            seq.len()
        )));
    }
    Ok(stratified_value(seq, k, &params))
}

/// Largest `t` satisfying the stratified guard, if any.
pub fn max_stratum(seq: &DegreeSequence) -> Option<usize> {
    let max = seq.max_degree() as usize;
    let mut s = 0usize;
    let mut best = None;
    for t in 1..=max {
        s += seq.count_at((max + 1 - t) as u32);
        if !stratified_guard(seq, s) {
            break;
        }
        best = Some(t);
    }
    best
}

/// The stratified bound at the largest valid `t`, which is also the largest
/// value over all valid `t`.
pub fn best_stratified_bound(seq: &DegreeSequence, k: u64) -> Result<Option<(usize, Rational)>> {
    check_k(k)?;
    match max_stratum(seq) {
        None => Ok(None),
        Some(t) => Ok(Some((t, stratified_bound(seq, k, t)?))),
    }
}

/// Every valid `(t, bound)` pair, computed incrementally from the identity
/// `bound(t) = (k n - S_s + s Δ_t) / (k + Δ_t)` with `s = s_t`.
pub fn all_stratified_bounds(seq: &DegreeSequence, k: u64) -> Result<Vec<(usize, Rational)>> {
    check_k(k)?;
    let n = seq.len() as i64;
    let max = seq.max_degree() as usize;
    let mut out = Vec::new();
    let mut s = 0usize;
    for t in 1..=max {
        s += seq.count_at((max + 1 - t) as u32);
        if !stratified_guard(seq, s) {
            break;
        }
        let delta_t = seq.d(s + 1) as i64;
        let num = k as i64 * n - seq.prefix_sum(s) as i64 + s as i64 * delta_t;
        out.push((t, Rational::new(num, k as i64 + delta_t)));
    }
    Ok(out)
}

/// Both lower bounds on the corona of the star of order `n` and their gap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoronaComparison {
    pub stratified: Rational,
    pub fink_jacobson: Rational,
    pub difference: Rational,
}

/// Degree sequence `{n-1, 2^(n-1), 1^(n-1)}` of the star corona of order `2n-1`.
pub fn star_corona_degrees(n: usize) -> DegreeSequence {
    let mut d = vec![(n - 1) as u32];
    d.extend(std::iter::repeat_n(2, n - 1));
    d.extend(std::iter::repeat_n(1, n - 1));
    DegreeSequence::from_sorted_unchecked(d)
}

/// Compares the single-stratum bound with `k N / (Δ + k)` on the star corona.
///
/// The stratified value equals `((2k-1)n - (k-3)) / (k+2)`, which is asserted
/// here. The difference is taken from the two exact values rather than from a
/// separate closed form; it factors as `(2k-1)(n-3)(n-1) / ((k+2)(n+k-1))`.
pub fn corona_comparison(n: usize, k: u64) -> Result<CoronaComparison> {
    check_k(k)?;
    if n < 4 {
        return domain(format!("star corona comparison needs n >= 4, got {n}"));
    }
    let seq = star_corona_degrees(n);
    let order = seq.len() as u64;
    let max = seq.max_degree() as u64;
    let top = seq.count_at(max as u32) as u64;
    // n_Δ + Δ n_Δ / k < N, in integers.
    if k * top + max * top >= k * order {
        return Err(Error::Precondition(format!(
            "n_Δ + Δ n_Δ / k is not below N = {order}"
        )));
    }
    let params = StratifiedParams::new(&seq, 1)?;
    let stratified = stratified_value(&seq, k, &params);
    let (ki, ni) = (k as i64, n as i64);
    debug_assert_eq!(
        stratified,
        Rational::new((2 * ki - 1) * ni - (ki - 3), ki + 2)
    );
    let fink_jacobson = fink_jacobson_ratio(order, max, k)?;
    Ok(CoronaComparison {
        stratified,
        fink_jacobson,
        difference: stratified - fink_jacobson,
    })
}

/// Smallest integer at or above a rational.
pub fn ceil(r: Rational) -> i64 {
    r.numer().div_ceil(r.denom())
}

/// Every lower bound computed for one degree sequence and one `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub m: u64,
    pub k: u64,
    pub sub_k: usize,
    pub fink_jacobson: u64,
    /// Valid `(t, bound)` pairs of the stratified bound.
    #[serde(skip)]
    pub stratified: Vec<(usize, Rational)>,
    #[serde(skip)]
    pub best_stratified: Option<(usize, Rational)>,
    pub caro_roditty: Option<u64>,
    pub fink_jacobson_tight: bool,
    pub stratified_tight: bool,
    /// `k > Δ`, where `gamma_k = n` trivially.
    pub k_exceeds_max_degree: bool,
}

impl BoundReport {
    pub fn compute(seq: &DegreeSequence, k: u64) -> Result<Self> {
        let sub = sub_k(seq, k)?;
        let n = seq.len() as u64;
        let max = seq.max_degree() as u64;
        let fj = fink_jacobson_bound(n, max, k)?;
        let stratified = all_stratified_bounds(seq, k)?;
        let best = best_stratified_bound(seq, k)?;
        let stratified_tight = best.is_some_and(|(_, b)| ceil(b) == sub as i64);
        Ok(BoundReport {
            n: seq.len(),
            m: seq.edge_count(),
            k,
            sub_k: sub,
            fink_jacobson: fj,
            stratified,
            best_stratified: best,
            caro_roditty: caro_roditty_upper(n, seq.min_degree() as u64, k),
            fink_jacobson_tight: fj == sub as u64,
            stratified_tight,
            k_exceeds_max_degree: k > max,
        })
    }

    /// Whether the recorded bounds respect `FJ <= ceil(stratified) <= sub_k`.
    pub fn chain_holds(&self) -> bool {
        let sub = self.sub_k as i64;
        let fj = self.fink_jacobson as i64;
        match self.best_stratified {
            Some((_, b)) => fj <= ceil(b) && ceil(b) <= sub,
            None => fj <= sub,
        }
    }
}

/// Exact `p/q` rendering, with `q = 1` spelled out.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}
