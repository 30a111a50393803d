//! Simple undirected graphs on vertices `0..n`.
//!
//! A [`Graph`] keeps its adjacency twice: a packed bit matrix for O(1) edge
//! queries and sorted per-vertex neighbor lists for iteration. Graphs are
//! immutable values; every mutation returns a fresh graph.
//!
//! Canonical labelings produced by [`Graph::generate`]:
//!
//! | family | labeling |
//! |---|---|
//! | `Path(n)` | `i ~ i+1` for `0 <= i < n-1` |
//! | `Cycle(n)` | cyclic order, `i ~ (i+1) mod n` |
//! | `Complete(n)` | all pairs |
//! | `CompleteBipartite(a, b)` | parts `0..a` and `a..a+b` |
//! | `Star(n)` | center `0`, leaves `1..n` |
//! | `CompleteBipartiteMinusPerfectMatching(p)` | parts `0..p`, `p..2p`; `i ~ p+j` iff `i != j` |
//! | `StarCorona(n)` | center `0`, leaves `1..n`, leaf `i` carries pendant `n-1+i` |
//! | `PendantAttach { base, pendants }` | base labels first, then pendants of base vertex 0, 1, ... in order |

use crate::error::{domain, malformed, Location, Result};

/// Default order cap for bitset-backed searches (one machine word per row).
pub const WORD_CAP: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
    neighbors: Vec<Vec<usize>>,
    edge_count: usize,
}

/// Named graph families used by the sharpness and comparison constructions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    /// Star of the given order: one center joined to `order - 1` leaves.
    Star(usize),
    /// `K_{p,p}` with a perfect matching removed; `p - 1`-regular of order `2p`.
    CompleteBipartiteMinusPerfectMatching(usize),
    /// Corona of the star of order `n`: each leaf gets one pendant, order `2n - 1`.
    StarCorona(usize),
    /// `pendants[i]` degree-one vertices appended to vertex `i` of `base`.
    PendantAttach {
        base: Box<FamilySpec>,
        pendants: Vec<usize>,
    },
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Graph {
            n,
            words,
            bits: vec![0; n * words],
            neighbors: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a graph from an edge list; duplicate pairs collapse to one edge.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for (idx, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(malformed(
                    Location::Edge(idx),
                    format!("endpoint of ({u}, {v}) out of range for order {n}"),
                ));
            }
            if u == v {
                return Err(malformed(Location::Edge(idx), format!("self-loop at {u}")));
            }
            g.set(u, v);
        }
        g.rebuild_neighbors();
        Ok(g)
    }

    /// Builds a graph from its upper-triangle bits in graph6 column order
    /// (`x(0,1), x(0,2), x(1,2), x(0,3), ...`).
    pub(crate) fn from_upper_triangle(n: usize, mut bit: impl FnMut(usize) -> bool) -> Self {
        let mut g = Graph::empty(n);
        let mut idx = 0;
        for j in 1..n {
            for i in 0..j {
                if bit(idx) {
                    g.set(i, j);
                }
                idx += 1;
            }
        }
        g.rebuild_neighbors();
        g
    }

    pub fn generate(spec: &FamilySpec) -> Result<Self> {
        let mut edges = Vec::new();
        let n = match spec {
            FamilySpec::Path(n) => {
                if *n == 0 {
                    return domain("path needs at least one vertex");
                }
                edges.extend((1..*n).map(|i| (i - 1, i)));
                *n
            }
            FamilySpec::Cycle(n) => {
                if *n < 3 {
                    return domain(format!("cycle needs n >= 3, got {n}"));
                }
                edges.extend((0..*n).map(|i| (i, (i + 1) % n)));
                *n
            }
            FamilySpec::Complete(n) => {
                if *n == 0 {
                    return domain("complete graph needs at least one vertex");
                }
                for j in 1..*n {
                    edges.extend((0..j).map(|i| (i, j)));
                }
                *n
            }
            FamilySpec::CompleteBipartite(a, b) => {
                if *a == 0 || *b == 0 {
                    return domain("complete bipartite parts must be nonempty");
                }
                for i in 0..*a {
                    edges.extend((0..*b).map(|j| (i, a + j)));
                }
                a + b
            }
            FamilySpec::Star(n) => {
                if *n == 0 {
                    return domain("star needs at least one vertex");
                }
                edges.extend((1..*n).map(|i| (0, i)));
                *n
            }
            FamilySpec::CompleteBipartiteMinusPerfectMatching(p) => {
                if *p == 0 {
                    return domain("part size must be at least 1");
                }
                for i in 0..*p {
                    edges.extend((0..*p).filter(|&j| j != i).map(|j| (i, p + j)));
                }
                2 * p
            }
            FamilySpec::StarCorona(n) => {
                if *n < 2 {
                    return domain(format!("star corona needs n >= 2, got {n}"));
                }
                for i in 1..*n {
                    edges.push((0, i));
                    edges.push((i, n - 1 + i));
                }
                2 * n - 1
            }
            FamilySpec::PendantAttach { base, pendants } => {
                let base = Graph::generate(base)?;
                if pendants.len() > base.n {
                    return domain(format!(
                        "{} pendant counts given for a base of order {}",
                        pendants.len(),
                        base.n
                    ));
                }
                edges.extend(base.edges());
                let mut next = base.n;
                for (v, &count) in pendants.iter().enumerate() {
                    for _ in 0..count {
                        edges.push((v, next));
                        next += 1;
                    }
                }
                next
            }
        };
        Graph::from_edge_list(n, &edges)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of edges.
    #[inline]
    pub fn size(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.neighbors.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.neighbors.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.neighbors.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Neighborhood of `v` as a single-word bitset. Only valid for `n <= 64`.
    #[inline]
    pub fn neighbor_mask(&self, v: usize) -> u64 {
        debug_assert!(self.n <= WORD_CAP);
        self.bits[v * self.words]
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.neighbors
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Non-edges `(u, v)` with `u < v`, i.e. the edges of the complement.
    pub fn non_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            (u + 1..self.n)
                .filter(move |&v| !self.has_edge(u, v))
                .map(move |v| (u, v))
        })
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn has_isolates(&self) -> bool {
        self.neighbors.iter().any(Vec::is_empty)
    }

    /// The common degree if every vertex has the same degree.
    pub fn regular_degree(&self) -> Option<usize> {
        let first = self.neighbors.first()?.len();
        self.neighbors
            .iter()
            .all(|ns| ns.len() == first)
            .then_some(first)
    }

    pub fn delete_edge(&self, u: usize, v: usize) -> Result<Self> {
        if !self.has_edge(u, v) {
            return domain(format!("({u}, {v}) is not an edge"));
        }
        let mut g = self.clone();
        g.clear(u, v);
        g.neighbors[u].retain(|&w| w != v);
        g.neighbors[v].retain(|&w| w != u);
        g.edge_count -= 1;
        Ok(g)
    }

    pub fn add_edge(&self, u: usize, v: usize) -> Result<Self> {
        if u >= self.n || v >= self.n || u == v || self.has_edge(u, v) {
            return domain(format!("({u}, {v}) is not an edge of the complement"));
        }
        let mut g = self.clone();
        g.set(u, v);
        let pos = g.neighbors[u].partition_point(|&w| w < v);
        g.neighbors[u].insert(pos, v);
        let pos = g.neighbors[v].partition_point(|&w| w < u);
        g.neighbors[v].insert(pos, u);
        g.edge_count += 1;
        Ok(g)
    }

    /// Removes `v` and relabels the remaining vertices `0..n-1` in their original order.
    pub fn delete_vertex(&self, v: usize) -> Result<Self> {
        if v >= self.n {
            return domain(format!("vertex {v} out of range for order {}", self.n));
        }
        let relabel = |w: usize| if w > v { w - 1 } else { w };
        let edges: Vec<_> = self
            .edges()
            .filter(|&(a, b)| a != v && b != v)
            .map(|(a, b)| (relabel(a), relabel(b)))
            .collect();
        Graph::from_edge_list(self.n - 1, &edges)
    }

    pub fn complement(&self) -> Self {
        let edges: Vec<_> = self.non_edges().collect();
        Graph::from_edge_list(self.n, &edges).expect("non-edges of a simple graph are valid")
    }

    fn set(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
        self.bits[v * self.words + u / 64] |= 1 << (u % 64);
    }

    fn clear(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] &= !(1 << (v % 64));
        self.bits[v * self.words + u / 64] &= !(1 << (u % 64));
    }

    fn rebuild_neighbors(&mut self) {
        let mut count = 0;
        for u in 0..self.n {
            let row = &self.bits[u * self.words..(u + 1) * self.words];
            let mut ns = Vec::new();
            for (w, &word) in row.iter().enumerate() {
                let mut rest = word;
                while rest != 0 {
                    ns.push(w * 64 + rest.trailing_zeros() as usize);
                    rest &= rest - 1;
                }
            }
            count += ns.len();
            self.neighbors[u] = ns;
        }
        self.edge_count = count / 2;
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}
