//! Exact k-domination.
//!
//! The oracle enumerates vertex subsets by ascending cardinality and, within a
//! cardinality, in lexicographic order of sorted vertex lists, so the reported
//! witness is the lexicographically smallest minimum k-dominating set. A
//! branch is cut once some vertex that can no longer join the set is unable to
//! collect `k` neighbors from the set plus the remaining picks.

use crate::error::{domain, Error, Result};
use crate::graph::{Graph, WORD_CAP};
use crate::invariants::{sub_k, DegreeSequence};

pub const DEFAULT_ORACLE_CAP: usize = 32;

/// A minimum k-dominating set together with its size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KDomWitness {
    pub k: u64,
    pub gamma_k: usize,
    pub witness: Vec<usize>,
}

pub fn is_k_dominating(g: &Graph, set: &[usize], k: u64) -> Result<bool> {
    if k == 0 {
        return domain("k must be at least 1");
    }
    let mut inside = vec![false; g.order()];
    for &v in set {
        if v >= g.order() {
            return domain(format!("vertex {v} out of range for order {}", g.order()));
        }
        inside[v] = true;
    }
    Ok((0..g.order()).filter(|&v| !inside[v]).all(|v| {
        g.neighbors(v).iter().filter(|&&w| inside[w]).count() as u64 >= k
    }))
}

/// Exact k-domination oracle with an explicit order cap.
#[derive(Debug, Clone, Copy)]
pub struct Oracle {
    cap: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            cap: DEFAULT_ORACLE_CAP,
        }
    }
}

impl Oracle {
    /// Caps above one bitset word are rejected.
    pub fn with_cap(cap: usize) -> Result<Self> {
        if cap > WORD_CAP {
            return domain(format!("oracle cap {cap} exceeds the {WORD_CAP}-vertex bitset limit"));
        }
        Ok(Oracle { cap })
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn gamma_k(&self, g: &Graph, k: u64) -> Result<KDomWitness> {
        if k == 0 {
            return domain("k must be at least 1");
        }
        let n = g.order();
        if n > self.cap {
            return Err(Error::ResourceLimit {
                order: n,
                cap: self.cap,
            });
        }
        if k > g.max_degree() as u64 {
            return Ok(KDomWitness {
                k,
                gamma_k: n,
                witness: (0..n).collect(),
            });
        }
        let mut search = Search {
            nbr: (0..n).map(|v| g.neighbor_mask(v)).collect(),
            n,
            k: k as u32,
            hits: vec![0; n],
            chosen: 0,
        };
        for size in 1..=n {
            if search.descend(0, size) {
                let witness = (0..n).filter(|&v| search.chosen >> v & 1 == 1).collect();
                return Ok(KDomWitness {
                    k,
                    gamma_k: size,
                    witness,
                });
            }
        }
        unreachable!("the whole vertex set is k-dominating")
    }
}

/// `gamma_k` with the default cap.
pub fn gamma_k(g: &Graph, k: u64) -> Result<KDomWitness> {
    Oracle::default().gamma_k(g, k)
}

struct Search {
    nbr: Vec<u64>,
    n: usize,
    k: u32,
    /// `hits[v] = |N(v) ∩ chosen|`.
    hits: Vec<u32>,
    chosen: u64,
}

impl Search {
    fn descend(&mut self, start: usize, picks: usize) -> bool {
        let open = if start >= 64 { 0 } else { !0u64 << start };
        for v in 0..start {
            if self.chosen >> v & 1 == 0 {
                let reachable = (self.nbr[v] & open).count_ones().min(picks as u32);
                if self.hits[v] + reachable < self.k {
                    return false;
                }
            }
        }
        if picks == 0 {
            return (start..self.n)
                .all(|v| self.chosen >> v & 1 == 1 || self.hits[v] >= self.k);
        }
        for v in start..=self.n - picks {
            self.toggle(v, true);
            if self.descend(v + 1, picks - 1) {
                return true;
            }
            self.toggle(v, false);
        }
        false
    }

    fn toggle(&mut self, v: usize, on: bool) {
        let mut rest = self.nbr[v];
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            if on {
                self.hits[w] += 1;
            } else {
                self.hits[w] -= 1;
            }
            rest &= rest - 1;
        }
        self.chosen ^= 1 << v;
    }
}

/// Caro–Roditty upper bound `floor(r n / (r + 1))` for the smallest positive
/// `r <= n` with `δ >= (r+1) k / r - 1`, compared as `δ r >= (r+1) k - r`.
pub fn caro_roditty_upper(n: u64, min_degree: u64, k: u64) -> Option<u64> {
    (1..=n)
        .find(|&r| min_degree * r + r >= (r + 1) * k)
        .map(|r| r * n / (r + 1))
}

/// `(lower, upper)` interval for `gamma_k` of a cubic graph of order `n`.
pub fn cubic_interval(n: u64, k: u64) -> Result<(u64, u64)> {
    match k {
        1 => Ok((n.div_ceil(4), n / 2)),
        2 => Ok(((2 * n).div_ceil(5), n / 2)),
        3 => Ok((n.div_ceil(2), 3 * n / 4)),
        _ => domain(format!("cubic intervals are defined for k in 1..=3, got {k}")),
    }
}

/// Whether `sub_k(G) = gamma_k(G)`.
pub fn equality_check(oracle: &Oracle, g: &Graph, k: u64) -> Result<bool> {
    let gamma = oracle.gamma_k(g, k)?.gamma_k;
    Ok(sub_k(&DegreeSequence::from_graph(g), k)? == gamma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::FamilySpec;
    use crate::invariants::sub_k_regular;
    use itertools::Itertools;

    fn family(spec: FamilySpec) -> Graph {
        Graph::generate(&spec).unwrap()
    }

    /// Unpruned oracle: first k-dominating subset in cardinality then lexicographic order.
    fn brute_force(g: &Graph, k: u64) -> (usize, Vec<usize>) {
        for size in 0..=g.order() {
            if let Some(s) = (0..g.order())
                .combinations(size)
                .find(|s| is_k_dominating(g, s, k).unwrap())
            {
                return (size, s);
            }
        }
        unreachable!()
    }

    #[test]
    fn domination_checks() {
        let c6 = family(FamilySpec::Cycle(6));
        assert!(is_k_dominating(&c6, &[0, 2, 4], 2).unwrap());
        let k4 = family(FamilySpec::Complete(4));
        assert!(is_k_dominating(&k4, &[2], 1).unwrap());
        assert!(!is_k_dominating(&k4, &[0, 1], 3).unwrap());
        assert!(is_k_dominating(&k4, &[7], 1).is_err());
        assert!(is_k_dominating(&k4, &[0], 0).is_err());
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(gamma_k(&family(FamilySpec::Cycle(9)), 1).unwrap().gamma_k, 3);
        let k4 = gamma_k(&family(FamilySpec::Complete(4)), 3).unwrap();
        assert_eq!((k4.gamma_k, k4.witness), (3, vec![0, 1, 2]));
        let sharp = family(FamilySpec::CompleteBipartiteMinusPerfectMatching(3));
        assert_eq!(gamma_k(&sharp, 2).unwrap().gamma_k, 3);
        let k3_pendants = family(FamilySpec::PendantAttach {
            base: Box::new(FamilySpec::Complete(3)),
            pendants: vec![2, 2, 2],
        });
        assert_eq!(gamma_k(&k3_pendants, 1).unwrap().gamma_k, 3);
    }

    #[test]
    fn k_above_max_degree_takes_everything() {
        let p = family(FamilySpec::Path(5));
        let w = gamma_k(&p, 3).unwrap();
        assert_eq!(w.gamma_k, 5);
        assert_eq!(w.witness, vec![0, 1, 2, 3, 4]);
        assert_eq!(gamma_k(&Graph::empty(3), 1).unwrap().gamma_k, 3);
    }

    #[test]
    fn cap_is_enforced() {
        let big = family(FamilySpec::Cycle(33));
        assert_eq!(
            gamma_k(&big, 1),
            Err(Error::ResourceLimit { order: 33, cap: 32 })
        );
        let oracle = Oracle::with_cap(40).unwrap();
        assert_eq!(oracle.gamma_k(&big, 1).unwrap().gamma_k, 11);
        assert!(Oracle::with_cap(65).is_err());
    }

    #[test]
    fn wide_word_edge() {
        let oracle = Oracle::with_cap(64).unwrap();
        let star = family(FamilySpec::Star(64));
        assert_eq!(oracle.gamma_k(&star, 1).unwrap().witness, vec![0]);
    }

    #[test]
    fn matches_brute_force_on_random_graphs() {
        use rand::{rngs::StdRng, Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.random_range(1..=9);
            let p = rng.random_range(0.1..0.9);
            let edges: Vec<_> = (0..n)
                .tuple_combinations()
                .filter(|_| rng.random_bool(p))
                .collect();
            let g = Graph::from_edge_list(n, &edges).unwrap();
            for k in 1..=3 {
                let w = gamma_k(&g, k).unwrap();
                assert_eq!((w.gamma_k, w.witness), brute_force(&g, k), "{g:?} k={k}");
            }
        }
    }

    #[test]
    fn caro_roditty_examples() {
        for n in [8u64, 10, 12, 20] {
            assert_eq!(caro_roditty_upper(n, 3, 3), Some(3 * n / 4));
            assert_eq!(caro_roditty_upper(n, 3, 1), Some(n / 2));
            assert_eq!(caro_roditty_upper(n, 3, 2), Some(n / 2));
        }
        // δ < k admits no r.
        assert_eq!(caro_roditty_upper(10, 1, 2), None);
        // Against the closed form r = ceil(k / (δ - k + 1)).
        for delta in 0..12u64 {
            for k in 1..8u64 {
                let expect = (delta >= k).then(|| k.div_ceil(delta - k + 1)).filter(|&r| r <= 30);
                assert_eq!(caro_roditty_upper(30, delta, k), expect.map(|r| r * 30 / (r + 1)));
            }
        }
    }

    #[test]
    fn cubic_intervals() {
        assert_eq!(cubic_interval(6, 1).unwrap(), (2, 3));
        assert_eq!(cubic_interval(8, 2).unwrap(), (4, 4));
        assert_eq!(cubic_interval(12, 3).unwrap(), (6, 9));
        assert!(cubic_interval(8, 4).is_err());
        for n in (4..=200).step_by(2) {
            for k in 1..=3 {
                let (lo, hi) = cubic_interval(n, k).unwrap();
                assert_eq!(lo, sub_k_regular(n, 3, k).unwrap());
                assert_eq!(Some(hi), caro_roditty_upper(n, 3, k));
            }
        }
    }

    #[test]
    fn equality_examples() {
        let oracle = Oracle::default();
        for n in 3..=12 {
            assert!(equality_check(&oracle, &family(FamilySpec::Cycle(n)), 1).unwrap());
        }
        assert!(!equality_check(&oracle, &family(FamilySpec::Complete(4)), 3).unwrap());
        let tree = family(FamilySpec::PendantAttach {
            base: Box::new(FamilySpec::Star(4)),
            pendants: vec![0, 1, 1],
        });
        assert!(!equality_check(&oracle, &tree, 1).unwrap());
    }

    #[test]
    fn complete_graph_threshold() {
        use crate::invariants::kn_equality_threshold;
        let oracle = Oracle::default();
        for n in 2..=20u64 {
            let kn = family(FamilySpec::Complete(n as usize));
            for k in 1..=5.min(n - 1) {
                assert_eq!(
                    equality_check(&oracle, &kn, k).unwrap(),
                    kn_equality_threshold(n, k).unwrap()
                );
            }
        }
    }
}
