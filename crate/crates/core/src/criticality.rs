//! Graphs that are critical for `sub_k` under edge deletion (ED), edge
//! addition (EA) or vertex deletion (VD), and the structural facts such graphs
//! must satisfy.
//!
//! A universally quantified criticality condition over an empty range holds
//! vacuously: edgeless graphs are ED-critical and complete graphs EA-critical.
//! Reports flag these cases so scans can leave them out.
//!
//! Index-based checks use the canonical ordering `v_1, ..., v_n`: degree
//! non-increasing, ties broken by ascending label. `top` is `v_1..v_t` and
//! `tail` is `v_{t+1}..v_n`, with `t = sub_k(G)`.

use itertools::Itertools;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::graph::Graph;
use crate::invariants::{sub_k, DegreeHistogram, DegreeSequence};

/// Outcome of one structural check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PropCheck {
    Pass,
    Fail,
    NotApplicable,
}

impl PropCheck {
    fn from_bool(ok: bool) -> Self {
        if ok {
            PropCheck::Pass
        } else {
            PropCheck::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PropCheck::Pass => "pass",
            PropCheck::Fail => "fail",
            PropCheck::NotApplicable => "n/a",
        }
    }
}

/// A single mutation together with `sub_k` of the mutated graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mutation {
    DeleteEdge { u: usize, v: usize, sub_k: u64 },
    AddEdge { u: usize, v: usize, sub_k: u64 },
    DeleteVertex { v: usize, sub_k: u64 },
}

impl std::fmt::Display for Mutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mutation::DeleteEdge { u, v, sub_k } => write!(f, "-e({u},{v})->{sub_k}"),
            Mutation::AddEdge { u, v, sub_k } => write!(f, "+e({u},{v})->{sub_k}"),
            Mutation::DeleteVertex { v, sub_k } => write!(f, "-v({v})->{sub_k}"),
        }
    }
}

/// The structural checks implied by criticality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PropChecks {
    /// ED-critical: the tail is an independent set.
    pub tail_independent: PropCheck,
    /// ED-critical, no isolates: `floor(t + S_t/k) = n` and every deletion raises `sub_k` by 1.
    pub ed_floor_gap: PropCheck,
    /// EA-critical: vertices of degree below `d_t` form a clique.
    pub low_degree_clique: PropCheck,
    /// EA-critical, no isolates: every addition lowers `sub_k` by exactly 1.
    pub ea_gap: PropCheck,
    /// VD-critical: every tail vertex has at least `k + 1` neighbors in the top.
    pub tail_attachment: PropCheck,
}

impl PropChecks {
    pub fn iter(&self) -> impl Iterator<Item = (&'static str, PropCheck)> {
        [
            ("tail_independent", self.tail_independent),
            ("ed_floor_gap", self.ed_floor_gap),
            ("low_degree_clique", self.low_degree_clique),
            ("ea_gap", self.ea_gap),
            ("tail_attachment", self.tail_attachment),
        ]
        .into_iter()
    }

    pub fn failures(&self) -> usize {
        self.iter().filter(|(_, c)| *c == PropCheck::Fail).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriticalityReport {
    pub k: u64,
    pub sub_k: u64,
    pub ed_critical: bool,
    pub ea_critical: bool,
    pub vd_critical: bool,
    pub ed_vacuous: bool,
    pub ea_vacuous: bool,
    pub prop_checks: PropChecks,
    /// Whether the tail checks also hold under every other non-increasing
    /// ordering (ties straddling index `t` change the tail). Recorded only.
    pub tail_independent_all_orderings: Option<bool>,
    pub tail_attachment_all_orderings: Option<bool>,
    /// First mutation found that breaks ED, then EA, then VD criticality.
    pub counterexample: Option<Mutation>,
}

/// `sub_k` of a graph, 0 for the null graph.
pub fn graph_sub_k(g: &Graph, k: u64) -> Result<u64> {
    if g.order() == 0 {
        if k == 0 {
            return domain("k must be at least 1");
        }
        return Ok(0);
    }
    Ok(sub_k(&DegreeSequence::from_graph(g), k)? as u64)
}

pub fn is_ed_critical(g: &Graph, k: u64) -> Result<bool> {
    let base = graph_sub_k(g, k)?;
    for (u, v) in g.edges() {
        if graph_sub_k(&g.delete_edge(u, v)?, k)? <= base {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_ea_critical(g: &Graph, k: u64) -> Result<bool> {
    let base = graph_sub_k(g, k)?;
    for (u, v) in g.non_edges() {
        if graph_sub_k(&g.add_edge(u, v)?, k)? >= base {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_vd_critical(g: &Graph, k: u64) -> Result<bool> {
    let base = graph_sub_k(g, k)?;
    for v in 0..g.order() {
        if graph_sub_k(&g.delete_vertex(v)?, k)? <= base {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `sub_k` after one mutation, from the degree histogram alone.
#[derive(Debug, Clone)]
pub struct IncrementalSubk<'g> {
    graph: &'g Graph,
    hist: DegreeHistogram,
    k: u64,
}

impl<'g> IncrementalSubk<'g> {
    pub fn new(graph: &'g Graph, k: u64) -> Result<Self> {
        if k == 0 {
            return domain("k must be at least 1");
        }
        Ok(IncrementalSubk {
            graph,
            hist: DegreeHistogram::from_graph(graph),
            k,
        })
    }

    pub fn base(&self) -> u64 {
        self.eval(&self.hist)
    }

    pub fn after_delete_edge(&self, u: usize, v: usize) -> u64 {
        let mut h = self.hist.clone();
        let (du, dv) = (self.graph.degree(u), self.graph.degree(v));
        h.move_vertex(du, du - 1);
        h.move_vertex(dv, dv - 1);
        self.eval(&h)
    }

    pub fn after_add_edge(&self, u: usize, v: usize) -> u64 {
        let mut h = self.hist.clone();
        let (du, dv) = (self.graph.degree(u), self.graph.degree(v));
        h.move_vertex(du, du + 1);
        h.move_vertex(dv, dv + 1);
        self.eval(&h)
    }

    pub fn after_delete_vertex(&self, v: usize) -> u64 {
        let mut h = self.hist.clone();
        h.remove_vertex(self.graph.degree(v));
        for &w in self.graph.neighbors(v) {
            let dw = self.graph.degree(w);
            h.move_vertex(dw, dw - 1);
        }
        self.eval(&h)
    }

    fn eval(&self, h: &DegreeHistogram) -> u64 {
        h.sub_k(self.k).expect("k validated at construction")
    }
}

/// Vertices sorted by degree non-increasing, ties by ascending label.
pub fn canonical_order(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.order()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    order
}

fn tail_is_independent(g: &Graph, tail: &[usize]) -> bool {
    tail.iter()
        .tuple_combinations()
        .all(|(&a, &b)| !g.has_edge(a, b))
}

fn tail_is_attached(g: &Graph, top: &[usize], tail: &[usize], k: u64) -> bool {
    let mut in_top = vec![false; g.order()];
    for &v in top {
        in_top[v] = true;
    }
    tail.iter().all(|&v| {
        g.neighbors(v).iter().filter(|&&w| in_top[w]).count() as u64 > k
    })
}

/// Largest number of tie-class splits examined by the all-orderings checks.
const ORDERING_LIMIT: usize = 10_000;

/// Evaluates `check(top, tail)` over every non-increasing ordering's split at `t`.
fn over_all_orderings(
    g: &Graph,
    t: usize,
    check: impl Fn(&[usize], &[usize]) -> bool,
) -> Option<bool> {
    let order = canonical_order(g);
    if t == 0 || t >= g.order() {
        return Some(check(&order, &[]));
    }
    let d_t = g.degree(order[t - 1]);
    let above: Vec<usize> = order.iter().copied().filter(|&v| g.degree(v) > d_t).collect();
    let ties: Vec<usize> = order.iter().copied().filter(|&v| g.degree(v) == d_t).collect();
    let below: Vec<usize> = order.iter().copied().filter(|&v| g.degree(v) < d_t).collect();
    let pick = t - above.len();
    if num_integer::binomial(ties.len(), pick) > ORDERING_LIMIT {
        return None;
    }
    Some(ties.iter().copied().combinations(pick).all(|chosen| {
        let mut top = above.clone();
        top.extend(&chosen);
        let mut tail: Vec<usize> = ties.iter().copied().filter(|v| !chosen.contains(v)).collect();
        tail.extend(&below);
        check(&top, &tail)
    }))
}

impl CriticalityReport {
    /// Full analysis with the incremental `sub_k` path for every mutation.
    pub fn analyze(g: &Graph, k: u64) -> Result<Self> {
        let inc = IncrementalSubk::new(g, k)?;
        let base = inc.base();
        let mut counterexample = None;

        let ed_vacuous = g.size() == 0;
        let ea_vacuous = g.is_complete();

        let deletions: Vec<_> = g.edges().map(|(u, v)| (u, v, inc.after_delete_edge(u, v))).collect();
        let ed_critical = match deletions.iter().find(|d| d.2 <= base) {
            Some(&(u, v, sub_k)) => {
                counterexample.get_or_insert(Mutation::DeleteEdge { u, v, sub_k });
                false
            }
            None => true,
        };

        let additions: Vec<_> = g.non_edges().map(|(u, v)| (u, v, inc.after_add_edge(u, v))).collect();
        let ea_critical = match additions.iter().find(|a| a.2 >= base) {
            Some(&(u, v, sub_k)) => {
                counterexample.get_or_insert(Mutation::AddEdge { u, v, sub_k });
                false
            }
            None => true,
        };

        let vd_critical = match (0..g.order())
            .map(|v| (v, inc.after_delete_vertex(v)))
            .find(|d| d.1 <= base)
        {
            Some((v, sub_k)) => {
                counterexample.get_or_insert(Mutation::DeleteVertex { v, sub_k });
                false
            }
            None => true,
        };

        let t = base as usize;
        let order = canonical_order(g);
        let (top, tail) = order.split_at(t.min(order.len()));
        let isolates = g.has_isolates();
        let na = PropCheck::NotApplicable;

        let tail_independent = if ed_critical {
            PropCheck::from_bool(tail_is_independent(g, tail))
        } else {
            na
        };
        let ed_floor_gap = if ed_critical && !isolates {
            let seq = DegreeSequence::from_graph(g);
            let floor = (k * t as u64 + seq.prefix_sum(t)) / k;
            PropCheck::from_bool(
                floor == g.order() as u64 && deletions.iter().all(|d| d.2 == base + 1),
            )
        } else {
            na
        };
        let low_degree_clique = if ea_critical && t >= 1 {
            let d_t = g.degree(order[t - 1]);
            let low: Vec<usize> = (0..g.order()).filter(|&v| g.degree(v) < d_t).collect();
            PropCheck::from_bool(low.iter().tuple_combinations().all(|(&a, &b)| g.has_edge(a, b)))
        } else {
            na
        };
        let ea_gap = if ea_critical && !isolates {
            PropCheck::from_bool(additions.iter().all(|a| a.2 + 1 == base))
        } else {
            na
        };
        let tail_attachment = if vd_critical {
            PropCheck::from_bool(tail_is_attached(g, top, tail, k))
        } else {
            na
        };

        Ok(CriticalityReport {
            k,
            sub_k: base,
            ed_critical,
            ea_critical,
            vd_critical,
            ed_vacuous,
            ea_vacuous,
            prop_checks: PropChecks {
                tail_independent,
                ed_floor_gap,
                low_degree_clique,
                ea_gap,
                tail_attachment,
            },
            tail_independent_all_orderings: ed_critical
                .then(|| over_all_orderings(g, t, |_, tail| tail_is_independent(g, tail)))
                .flatten(),
            tail_attachment_all_orderings: vd_critical
                .then(|| over_all_orderings(g, t, |top, tail| tail_is_attached(g, top, tail, k)))
                .flatten(),
            counterexample,
        })
    }

    /// Criticality holding for a nonempty range of mutations.
    pub fn has_nonvacuous_criticality(&self) -> bool {
        (self.ed_critical && !self.ed_vacuous) || (self.ea_critical && !self.ea_vacuous) || self.vd_critical
    }
}

pub fn check_tail_independence(g: &Graph, k: u64) -> Result<PropCheck> {
    Ok(CriticalityReport::analyze(g, k)?.prop_checks.tail_independent)
}

pub fn check_ed_floor_gap(g: &Graph, k: u64) -> Result<PropCheck> {
    Ok(CriticalityReport::analyze(g, k)?.prop_checks.ed_floor_gap)
}

pub fn check_low_degree_clique(g: &Graph, k: u64) -> Result<PropCheck> {
    Ok(CriticalityReport::analyze(g, k)?.prop_checks.low_degree_clique)
}

pub fn check_ea_gap(g: &Graph, k: u64) -> Result<PropCheck> {
    Ok(CriticalityReport::analyze(g, k)?.prop_checks.ea_gap)
}

pub fn check_tail_attachment(g: &Graph, k: u64) -> Result<PropCheck> {
    Ok(CriticalityReport::analyze(g, k)?.prop_checks.tail_attachment)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::graphs_of_order;
    use crate::graph::FamilySpec;

    fn family(spec: FamilySpec) -> Graph {
        Graph::generate(&spec).unwrap()
    }

    use PropCheck::*;

    #[test]
    fn predicate_examples() {
        let k2 = family(FamilySpec::Complete(2));
        assert!(is_ed_critical(&k2, 1).unwrap());
        assert!(is_ea_critical(&Graph::empty(2), 1).unwrap());
        assert!(!is_vd_critical(&family(FamilySpec::Star(4)), 1).unwrap());
        assert!(!is_ed_critical(&family(FamilySpec::Cycle(4)), 1).unwrap());
    }

    #[test]
    fn check_examples() {
        let k2 = family(FamilySpec::Complete(2));
        assert_eq!(check_tail_independence(&k2, 1).unwrap(), Pass);
        assert_eq!(check_ed_floor_gap(&k2, 1).unwrap(), Pass);

        let matching = Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!is_ed_critical(&matching, 1).unwrap());
        assert_eq!(check_tail_independence(&matching, 1).unwrap(), NotApplicable);

        let c4 = family(FamilySpec::Cycle(4));
        assert_eq!(check_ed_floor_gap(&c4, 1).unwrap(), NotApplicable);

        assert_eq!(check_low_degree_clique(&Graph::empty(2), 1).unwrap(), Pass);
        assert_eq!(check_ea_gap(&Graph::empty(2), 1).unwrap(), NotApplicable);
        let k3 = family(FamilySpec::Complete(3));
        let rep = CriticalityReport::analyze(&k3, 1).unwrap();
        assert!(rep.ea_critical && rep.ea_vacuous);
        assert_eq!(rep.prop_checks.low_degree_clique, Pass);

        let p3 = family(FamilySpec::Path(3));
        assert_eq!(graph_sub_k(&p3, 1).unwrap(), 1);
        assert_eq!(check_ea_gap(&p3, 1).unwrap(), NotApplicable);
        assert_eq!(check_low_degree_clique(&p3, 1).unwrap(), NotApplicable);

        assert_eq!(check_tail_attachment(&family(FamilySpec::Star(4)), 1).unwrap(), NotApplicable);
        assert_eq!(check_tail_attachment(&family(FamilySpec::Complete(5)), 1).unwrap(), NotApplicable);
    }

    #[test]
    fn report_on_k2() {
        let rep = CriticalityReport::analyze(&family(FamilySpec::Complete(2)), 1).unwrap();
        assert!(rep.ed_critical && !rep.ed_vacuous);
        assert!(rep.ea_critical && rep.ea_vacuous);
        // K_2 - v = K_1 with sub 1 = sub(K_2).
        assert!(!rep.vd_critical);
        assert_eq!(rep.counterexample, Some(Mutation::DeleteVertex { v: 0, sub_k: 1 }));
        assert_eq!(rep.tail_independent_all_orderings, Some(true));
    }

    #[test]
    fn vertex_deletion_gap_is_unbounded() {
        for m in 3..=10 {
            let star = family(FamilySpec::Star(m + 1));
            let without_center = star.delete_vertex(0).unwrap();
            assert_eq!(
                graph_sub_k(&without_center, 1).unwrap() - graph_sub_k(&star, 1).unwrap(),
                m as u64 - 1
            );
        }
    }

    #[test]
    fn single_vertex_deletion_yields_null_graph() {
        let k1 = Graph::empty(1);
        let inc = IncrementalSubk::new(&k1, 2).unwrap();
        assert_eq!(inc.after_delete_vertex(0), 0);
        assert_eq!(graph_sub_k(&Graph::empty(0), 2).unwrap(), 0);
    }

    #[test]
    fn incremental_matches_recomputation() {
        for n in 1..=6 {
            for g in graphs_of_order(n) {
                for k in 1..=3 {
                    let inc = IncrementalSubk::new(&g, k).unwrap();
                    assert_eq!(inc.base(), graph_sub_k(&g, k).unwrap());
                    for (u, v) in g.edges() {
                        let direct = graph_sub_k(&g.delete_edge(u, v).unwrap(), k).unwrap();
                        assert_eq!(inc.after_delete_edge(u, v), direct);
                    }
                    for (u, v) in g.non_edges() {
                        let direct = graph_sub_k(&g.add_edge(u, v).unwrap(), k).unwrap();
                        assert_eq!(inc.after_add_edge(u, v), direct);
                    }
                    for v in 0..n {
                        let direct = graph_sub_k(&g.delete_vertex(v).unwrap(), k).unwrap();
                        assert_eq!(inc.after_delete_vertex(v), direct);
                    }
                    let rep = CriticalityReport::analyze(&g, k).unwrap();
                    assert_eq!(rep.ed_critical, is_ed_critical(&g, k).unwrap());
                    assert_eq!(rep.ea_critical, is_ea_critical(&g, k).unwrap());
                    assert_eq!(rep.vd_critical, is_vd_critical(&g, k).unwrap());
                }
            }
        }
    }

    #[test]
    fn not_applicable_unless_critical() {
        for g in graphs_of_order(5) {
            for k in 1..=2 {
                let rep = CriticalityReport::analyze(&g, k).unwrap();
                let c = rep.prop_checks;
                if !rep.ed_critical {
                    assert_eq!((c.tail_independent, c.ed_floor_gap), (NotApplicable, NotApplicable));
                }
                if !rep.ea_critical {
                    assert_eq!((c.low_degree_clique, c.ea_gap), (NotApplicable, NotApplicable));
                }
                if !rep.vd_critical {
                    assert_eq!(c.tail_attachment, NotApplicable);
                }
                assert_eq!(rep.counterexample.is_none(), rep.ed_critical && rep.ea_critical && rep.vd_critical);
            }
        }
    }
}
