//! Exhaustive generation of non-isomorphic small graphs.
//!
//! Every graph of order `n` arises from one of order `n - 1` by adding a
//! vertex of minimum degree, so orders are grown one vertex at a time and
//! duplicates are removed through a canonical form. The canonical form is the
//! largest upper-triangle code over all relabelings that respect the stable
//! color-refinement partition; the partition is isomorphism-invariant, so two
//! graphs share a code exactly when they are isomorphic.

use std::collections::HashSet;

use crate::graph::Graph;
use crate::io::encode_graph6;

/// Upper-triangle codes fit one `u64` up to this order.
pub const MAX_ENUMERATION_ORDER: usize = 11;

#[inline]
fn pair_index(i: usize, j: usize) -> usize {
    let (lo, hi) = if i < j { (i, j) } else { (j, i) };
    hi * (hi - 1) / 2 + lo
}

fn code_under(edges: &[(usize, usize)], position: &[usize]) -> u64 {
    edges
        .iter()
        .fold(0u64, |acc, &(u, v)| acc | 1 << pair_index(position[u], position[v]))
}

fn graph_from_code(n: usize, code: u64) -> Graph {
    Graph::from_upper_triangle(n, |idx| code >> idx & 1 == 1)
}

/// Stable color refinement: vertices grouped by degree, then repeatedly by the
/// multiset of neighbor colors. Colors are ranks of sorted signatures.
fn refine(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut colors: Vec<usize> = g.degrees();
    let mut classes = usize::MAX;
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut ns: Vec<usize> = g.neighbors(v).iter().map(|&w| colors[w]).collect();
                ns.sort_unstable();
                (colors[v], ns)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        colors = sigs
            .iter()
            .map(|s| distinct.binary_search(s).expect("signature present"))
            .collect();
        if distinct.len() == classes {
            return colors;
        }
        classes = distinct.len();
    }
}

/// The canonical code of `g`; equal codes mean isomorphic graphs.
pub fn canonical_code(g: &Graph) -> u64 {
    let n = g.order();
    assert!(n <= MAX_ENUMERATION_ORDER, "canonical codes need n <= {MAX_ENUMERATION_ORDER}");
    let colors = refine(g);
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut by_color: Vec<usize> = (0..n).collect();
    by_color.sort_by_key(|&v| (colors[v], v));
    for v in by_color {
        match cells.last_mut() {
            Some(cell) if colors[cell[0]] == colors[v] => cell.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut position = vec![0usize; n];
    let mut best = 0u64;
    assign(&cells, 0, 0, &mut position, &edges, &mut best);
    best
}

/// Tries every bijection of each cell onto its block of positions.
fn assign(
    cells: &[Vec<usize>],
    cell: usize,
    offset: usize,
    position: &mut [usize],
    edges: &[(usize, usize)],
    best: &mut u64,
) {
    let Some(members) = cells.get(cell) else {
        *best = (*best).max(code_under(edges, position));
        return;
    };
    let mut perm = members.clone();
    let len = perm.len();
    // Heap's algorithm over the cell.
    let mut c = vec![0usize; len];
    let place = |perm: &[usize], position: &mut [usize]| {
        for (i, &v) in perm.iter().enumerate() {
            position[v] = offset + i;
        }
    };
    place(&perm, position);
    assign(cells, cell + 1, offset + len, position, edges, best);
    let mut i = 0;
    while i < len {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            place(&perm, position);
            assign(cells, cell + 1, offset + len, position, edges, best);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

pub fn canonical_form(g: &Graph) -> Graph {
    graph_from_code(g.order(), canonical_code(g))
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.order() == b.order() && a.size() == b.size() && canonical_code(a) == canonical_code(b)
}

fn extend(previous: &[Graph]) -> Vec<Graph> {
    let Some(first) = previous.first() else {
        return vec![Graph::empty(1)];
    };
    let m = first.order();
    let n = m + 1;
    let mut seen = HashSet::new();
    for g in previous {
        let edges: Vec<(usize, usize)> = g.edges().collect();
        for subset in 0u64..1 << m {
            let deg = subset.count_ones() as usize;
            // The new vertex must have minimum degree in the extended graph.
            let min_old = (0..m)
                .map(|v| g.degree(v) + (subset >> v & 1) as usize)
                .min()
                .unwrap_or(usize::MAX);
            if deg > min_old {
                continue;
            }
            let mut all = edges.clone();
            all.extend((0..m).filter(|&v| subset >> v & 1 == 1).map(|v| (v, m)));
            let h = Graph::from_edge_list(n, &all).expect("valid extension");
            seen.insert(canonical_code(&h));
        }
    }
    let mut codes: Vec<u64> = seen.into_iter().collect();
    codes.sort_unstable();
    codes.into_iter().map(|c| graph_from_code(n, c)).collect()
}

/// All non-isomorphic graphs of order `1..=max_order`, grouped by order
/// (`result[i]` holds order `i + 1`), each in canonical labeling.
pub fn graphs_up_to(max_order: usize) -> Vec<Vec<Graph>> {
    assert!(
        max_order <= MAX_ENUMERATION_ORDER,
        "enumeration supports orders up to {MAX_ENUMERATION_ORDER}"
    );
    let mut out: Vec<Vec<Graph>> = Vec::with_capacity(max_order);
    for _ in 0..max_order {
        let next = extend(out.last().map(Vec::as_slice).unwrap_or(&[]));
        out.push(next);
    }
    out
}

pub fn graphs_of_order(n: usize) -> Vec<Graph> {
    if n == 0 {
        return vec![Graph::empty(0)];
    }
    graphs_up_to(n).pop().expect("n >= 1")
}

/// graph6 lines for every non-isomorphic graph with order in `min..=max`.
pub fn corpus_lines(min_order: usize, max_order: usize) -> Vec<String> {
    graphs_up_to(max_order)
        .into_iter()
        .skip(min_order.saturating_sub(1))
        .flatten()
        .map(|g| encode_graph6(&g))
        .collect()
}
