//! Longest cycles (plain and under the four edge constraints used by the
//! block analysis), exhaustive cycle enumeration, and dominating cycles
//! through prescribed matchings.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Cycle, Edge, Graph};
use crate::search::{self, Problem, Search};

/// Exact circumference with a witness cycle.
pub fn circumference(g: &Graph) -> Result<(usize, Cycle)> {
    longest_cycle(g, Problem::cycles(1, Vec::new())).ok_or(Error::Acyclic)
}

/// Longest single cycle satisfying the problem's vertex and edge constraints.
pub fn longest_cycle(g: &Graph, problem: Problem) -> Option<(usize, Cycle)> {
    Search::new(g, problem).run().map(|s| {
        let cycle = Cycle(search::edges_to_cycle(&s.edges)).canonical();
        (s.covered, cycle)
    })
}

/// Maximum cycle lengths in the four classes a cycle of a substitution can
/// induce on one block. `None` marks an empty class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstrainedMaxima {
    /// Cycles through the edge `e`.
    pub through_e: Option<usize>,
    /// Cycles through exactly one endpoint of `e`.
    pub one_endpoint: Option<usize>,
    /// Cycles through both endpoints but not along `e`.
    pub both_avoid_e: Option<usize>,
    /// Two disjoint cycles, one through each endpoint (total length).
    pub two_cycles: Option<usize>,
}

impl ConstrainedMaxima {
    pub fn as_array(&self) -> [Option<usize>; 4] {
        [self.through_e, self.one_endpoint, self.both_avoid_e, self.two_cycles]
    }
}

pub fn constrained_maxima(g: &Graph, e: Edge) -> Result<ConstrainedMaxima> {
    g.require_cubic()?;
    g.require_edge(e)?;
    let Edge(x, y) = e;
    let through_e = longest_cycle(g, Problem { forced_edges: vec![e], ..Problem::cycles(1, Vec::new()) }).map(|r| r.0);
    let one_side = |keep: usize, drop: usize| {
        longest_cycle(
            g,
            Problem { required_vertices: vec![keep], excluded_vertices: vec![drop], ..Problem::cycles(1, Vec::new()) },
        )
        .map(|r| r.0)
    };
    let one_endpoint = one_side(x, y).max(one_side(y, x));
    let both_avoid_e = longest_cycle(
        g,
        Problem { required_vertices: vec![x, y], forbidden_edges: vec![e], ..Problem::cycles(1, Vec::new()) },
    )
    .map(|r| r.0);
    let two_cycles = max_disjoint_cycle_pair(g, x, y)?.map(|r| r.0);
    Ok(ConstrainedMaxima { through_e, one_endpoint, both_avoid_e, two_cycles })
}

/// Largest `|C1| + |C2|` over vertex-disjoint cycles with `x ∈ C1`, `y ∈ C2`.
pub fn max_disjoint_cycle_pair(g: &Graph, x: usize, y: usize) -> Result<Option<(usize, Cycle, Cycle)>> {
    if x == y || x >= g.n() || y >= g.n() {
        return Err(Error::InvalidInput(format!("need two distinct vertices, got {x} and {y}")));
    }
    Ok(Search::new(g, Problem::cycles(2, vec![x, y])).run().map(|s| {
        let mut parts = search::edges_to_cycles(&s.edges);
        parts.sort_by_key(|c| !c.contains(&x));
        let c2 = Cycle(parts.pop().unwrap()).canonical();
        let c1 = Cycle(parts.pop().unwrap()).canonical();
        (s.covered, c1, c2)
    }))
}

/// Calls `f` once per cycle of `g`, each in canonical form, in the order of
/// a DFS rooted at the cycle's minimum vertex.
pub fn for_each_cycle(g: &Graph, mut f: impl FnMut(&Cycle)) {
    let n = g.n();
    let mut on_path = vec![false; n];
    let mut path = Vec::with_capacity(n);
    for root in 0..n {
        path.push(root);
        on_path[root] = true;
        extend(g, root, &mut path, &mut on_path, &mut f);
        on_path[root] = false;
        path.pop();
    }

    fn extend(g: &Graph, root: usize, path: &mut Vec<usize>, on_path: &mut [bool], f: &mut impl FnMut(&Cycle)) {
        let last = *path.last().unwrap();
        for &w in g.neighbors(last) {
            if w == root && path.len() >= 3 && path[1] < last {
                f(&Cycle(path.clone()));
            } else if w > root && !on_path[w] {
                on_path[w] = true;
                path.push(w);
                extend(g, root, path, on_path, f);
                path.pop();
                on_path[w] = false;
            }
        }
    }
}

pub fn enumerate_cycles(g: &Graph) -> Vec<Cycle> {
    let mut out = Vec::new();
    for_each_cycle(g, |c| out.push(c.clone()));
    out
}

fn check_matching(g: &Graph, m: &[Edge]) -> Result<()> {
    for (i, e) in m.iter().enumerate() {
        if !g.has_edge(e.0, e.1) {
            return Err(Error::NotAMatching(format!("{e} is not an edge")));
        }
        if let Some(f) = m[..i].iter().find(|f| f.shares_vertex(e)) {
            return Err(Error::NotAMatching(format!("{f} and {e} share a vertex")));
        }
    }
    Ok(())
}

/// A cycle through every edge of `m` whose vertex set touches every edge of
/// `g`, or `None` if the exhaustive search finds none.
pub fn dominating_cycle_containing(g: &Graph, m: &[Edge]) -> Result<Option<Cycle>> {
    check_matching(g, m)?;
    let problem = Problem { forced_edges: m.to_vec(), dominating: true, first_only: true, ..Problem::cycles(1, Vec::new()) };
    Ok(Search::new(g, problem).run().map(|s| Cycle(search::edges_to_cycle(&s.edges)).canonical()))
}

/// All matchings of size `k`, as ascending edge-id lists in lexicographic
/// order.
pub fn matchings_of_size(g: &Graph, k: usize) -> Vec<Vec<usize>> {
    let edges = g.edges();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    let mut used = vec![false; g.n()];
    rec(&edges, k, 0, &mut cur, &mut used, &mut out);
    return out;

    fn rec(edges: &[Edge], k: usize, from: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for id in from..edges.len() {
            let Edge(u, v) = edges[id];
            if !used[u] && !used[v] {
                used[u] = true;
                used[v] = true;
                cur.push(id);
                rec(edges, k, id + 1, cur, used, out);
                cur.pop();
                used[u] = false;
                used[v] = false;
            }
        }
    }
}

/// Outcome of trying every size-`k` matching.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyReport {
    pub k: usize,
    /// Index of the first matching examined, in lexicographic order.
    pub start: usize,
    pub checked: usize,
    pub total: usize,
    /// Matchings (as edge lists) that no dominating cycle contains.
    pub failures: Vec<Vec<Edge>>,
}

pub fn matching_survey(g: &Graph, k: usize) -> Result<SurveyReport> {
    matching_survey_range(g, k, 0, usize::MAX)
}

/// Survey restricted to matchings `start..start + limit`, so long runs can
/// be resumed.
pub fn matching_survey_range(g: &Graph, k: usize, start: usize, limit: usize) -> Result<SurveyReport> {
    g.require_cubic()?;
    let edges = g.edges();
    let all = matchings_of_size(g, k);
    let total = all.len();
    let mut failures = Vec::new();
    let mut checked = 0;
    for ids in all.into_iter().skip(start).take(limit) {
        let m: Vec<Edge> = ids.iter().map(|&i| edges[i]).collect();
        checked += 1;
        if dominating_cycle_containing(g, &m)?.is_none() {
            failures.push(m);
        }
    }
    Ok(SurveyReport { k, start, checked, total, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    /// Edge-subset oracle: every subset of edges forming one connected
    /// 2-regular subgraph is a cycle.
    fn subset_cycles(g: &Graph) -> Vec<Vec<usize>> {
        let edges = g.edges();
        assert!(edges.len() <= 22);
        let mut out = Vec::new();
        for mask in 1u32..(1 << edges.len()) {
            let chosen: Vec<Edge> = (0..edges.len()).filter(|i| mask >> i & 1 == 1).map(|i| edges[i]).collect();
            let mut deg = vec![0; g.n()];
            for e in &chosen {
                deg[e.0] += 1;
                deg[e.1] += 1;
            }
            if deg.iter().any(|&d| d != 0 && d != 2) {
                continue;
            }
            let cyc = search::edges_to_cycle(&chosen);
            if cyc.len() == chosen.len() {
                out.push(cyc);
            }
        }
        out
    }

    #[test]
    fn cycle_counts() {
        assert_eq!(enumerate_cycles(&named::k4()).len(), 7);
        assert_eq!(enumerate_cycles(&named::cycle(3)).len(), 1);
        let p = named::petersen();
        let cycles = enumerate_cycles(&p);
        assert_eq!(cycles.len(), subset_cycles(&p).len());
        // 12 five-cycles, 10 six-cycles, 15 eight-cycles, 20 nine-cycles
        assert_eq!(cycles.len(), 57);
        let mut by_len = [0; 11];
        for c in &cycles {
            by_len[c.len()] += 1;
        }
        assert_eq!(by_len, [0, 0, 0, 0, 0, 12, 10, 0, 15, 20, 0]);
        for c in &cycles {
            c.validate(&p).unwrap();
            assert_eq!(&c.canonical(), c);
        }
    }

    #[test]
    fn circumference_small() {
        assert_eq!(circumference(&named::k4()).unwrap().0, 4);
        let (len, w) = circumference(&named::petersen()).unwrap();
        assert_eq!(len, 9);
        w.validate(&named::petersen()).unwrap();
        assert_eq!(circumference(&named::mobius_ladder(8)).unwrap().0, 8);
        assert_eq!(circumference(&named::path(4)), Err(Error::Acyclic));
    }

    #[test]
    fn k4_constrained() {
        // 0-1-2-3 uses e, the triangle 0-2-3 misses 1, 0-2-1-3 avoids e
        let k4 = named::k4();
        let m = constrained_maxima(&k4, Edge(0, 1)).unwrap();
        assert_eq!(m.as_array(), [Some(4), Some(3), Some(4), None]);
        assert_eq!(m.as_array(), oracle_maxima(&k4, Edge(0, 1)));
    }

    fn oracle_maxima(g: &Graph, e: Edge) -> [Option<usize>; 4] {
        let cycles = enumerate_cycles(g);
        let best = |f: &dyn Fn(&Cycle) -> bool| cycles.iter().filter(|c| f(c)).map(|c| c.len()).max();
        let (x, y) = (e.0, e.1);
        let through = best(&|c| c.contains_edge(e));
        let one = best(&|c| c.contains(x) != c.contains(y));
        let both = best(&|c| c.contains(x) && c.contains(y) && !c.contains_edge(e));
        let mut two = None;
        for a in cycles.iter().filter(|c| c.contains(x) && !c.contains(y)) {
            for b in cycles.iter().filter(|c| c.contains(y) && !c.contains(x)) {
                if a.vertices().iter().all(|v| !b.contains(*v)) {
                    two = two.max(Some(a.len() + b.len()));
                }
            }
        }
        [through, one, both, two]
    }

    #[test]
    fn petersen_constrained_matches_enumeration() {
        let p = named::petersen();
        for e in p.edges() {
            assert_eq!(constrained_maxima(&p, e).unwrap().as_array(), oracle_maxima(&p, e), "edge {e}");
        }
    }

    #[test]
    fn disjoint_pairs() {
        assert_eq!(max_disjoint_cycle_pair(&named::k4(), 0, 1).unwrap(), None);
        let (total, c1, c2) = max_disjoint_cycle_pair(&named::prism(), 0, 3).unwrap().unwrap();
        assert_eq!(total, 6);
        assert!(c1.contains(0) && c2.contains(3));
        let p = named::petersen();
        assert_eq!(max_disjoint_cycle_pair(&p, 0, 1).unwrap().map(|r| r.0), oracle_maxima(&p, Edge(0, 1))[3]);
    }

    #[test]
    fn dominating_cycles() {
        let k4 = named::k4();
        let c = dominating_cycle_containing(&k4, &[Edge(0, 1)]).unwrap().unwrap();
        c.validate(&k4).unwrap();
        assert!(c.contains_edge(Edge(0, 1)));
        assert!(c.dominates(&k4));
        assert!(dominating_cycle_containing(&k4, &[Edge(0, 1), Edge(1, 2)]).is_err());
        let p = named::petersen();
        let c = dominating_cycle_containing(&p, &[]).unwrap().unwrap();
        assert!(c.dominates(&p));
    }

    #[test]
    fn mobius_survey() {
        let g = named::mobius_ladder(8);
        let r4 = matching_survey(&g, 4).unwrap();
        assert!(!r4.failures.is_empty());
        assert_eq!(matching_survey(&g, 3).unwrap().failures.len(), 0);
    }

    #[test]
    fn survey_ranges_partition() {
        let g = named::mobius_ladder(8);
        let all = matching_survey(&g, 4).unwrap();
        let a = matching_survey_range(&g, 4, 0, 3).unwrap();
        let b = matching_survey_range(&g, 4, 3, usize::MAX).unwrap();
        assert_eq!(a.checked + b.checked, all.total);
        let mut joined = a.failures.clone();
        joined.extend(b.failures);
        assert_eq!(joined, all.failures);
    }
}
