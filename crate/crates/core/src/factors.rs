//! 2-factors of cubic graphs (complements of perfect matchings), oddness and
//! the number of odd cycles a 2-factor is forced to have away from an edge.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Cycle, Edge, Graph};
use crate::search;

/// Calls `f` with every perfect matching, as ascending edge ids. Matchings
/// are produced in lexicographic order by always matching the lowest
/// uncovered vertex first.
pub fn for_each_perfect_matching(g: &Graph, mut f: impl FnMut(&[usize])) {
    let edges = g.edges();
    let n = g.n();
    if n % 2 == 1 {
        return;
    }
    let mut covered = vec![false; n];
    let mut chosen = Vec::with_capacity(n / 2);
    rec(g, &edges, &mut covered, &mut chosen, &mut f);

    fn rec(g: &Graph, edges: &[Edge], covered: &mut [bool], chosen: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        let Some(v) = covered.iter().position(|&c| !c) else {
            let mut ids = chosen.clone();
            ids.sort_unstable();
            f(&ids);
            return;
        };
        covered[v] = true;
        for &w in g.neighbors(v) {
            if covered[w] {
                continue;
            }
            covered[w] = true;
            chosen.push(edges.binary_search(&Edge::new(v, w)).unwrap());
            rec(g, edges, covered, chosen, f);
            chosen.pop();
            covered[w] = false;
        }
        covered[v] = false;
    }
}

pub fn count_perfect_matchings(g: &Graph) -> usize {
    let mut count = 0;
    for_each_perfect_matching(g, |_| count += 1);
    count
}

/// A spanning 2-regular subgraph, as its cycles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoFactor {
    pub cycles: Vec<Cycle>,
}

impl TwoFactor {
    /// The 2-factor left after removing a perfect matching from a cubic graph.
    pub fn complement_of(g: &Graph, matching: &[usize]) -> TwoFactor {
        let edges = g.edges();
        let mut in_matching = vec![false; edges.len()];
        for &id in matching {
            in_matching[id] = true;
        }
        let rest: Vec<Edge> = (0..edges.len()).filter(|&i| !in_matching[i]).map(|i| edges[i]).collect();
        let mut cycles: Vec<Cycle> = search::edges_to_cycles(&rest).into_iter().map(|c| Cycle(c).canonical()).collect();
        cycles.sort();
        TwoFactor { cycles }
    }

    pub fn odd_cycles(&self) -> usize {
        self.cycles.iter().filter(|c| c.len() % 2 == 1).count()
    }

    /// Odd cycles containing neither endpoint of `e`.
    pub fn odd_cycles_avoiding(&self, e: Edge) -> usize {
        self.cycles.iter().filter(|c| c.len() % 2 == 1 && !c.contains(e.0) && !c.contains(e.1)).count()
    }

    /// Every vertex on exactly one cycle, consecutive vertices adjacent.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let mut seen = vec![false; g.n()];
        for c in &self.cycles {
            c.validate(g)?;
            for &v in c.vertices() {
                if seen[v] {
                    return Err(Error::InvalidCycle(format!("vertex {v} on two cycles")));
                }
                seen[v] = true;
            }
        }
        match seen.iter().position(|&s| !s) {
            Some(v) => Err(Error::InvalidCycle(format!("vertex {v} uncovered"))),
            None => Ok(()),
        }
    }
}

pub fn enumerate_two_factors(g: &Graph) -> Result<Vec<TwoFactor>> {
    g.require_cubic()?;
    let mut out = Vec::new();
    for_each_perfect_matching(g, |m| out.push(TwoFactor::complement_of(g, m)));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OddnessReport {
    /// Minimum number of odd cycles over all 2-factors; `None` if the graph
    /// has no 2-factor.
    pub oddness: Option<usize>,
    pub witness: Option<TwoFactor>,
    pub two_factors: usize,
    /// With an edge supplied: the forced odd-cycle count away from it.
    pub forced_odd_avoiding_e: Option<usize>,
}

pub fn oddness(g: &Graph) -> Result<OddnessReport> {
    oddness_with_edge(g, None)
}

pub fn oddness_with_edge(g: &Graph, e: Option<Edge>) -> Result<OddnessReport> {
    g.require_cubic()?;
    if let Some(e) = e {
        g.require_edge(e)?;
    }
    let mut best: Option<(usize, Vec<usize>)> = None;
    let mut forced: Option<usize> = None;
    let mut count = 0;
    for_each_perfect_matching(g, |m| {
        count += 1;
        let tf = TwoFactor::complement_of(g, m);
        let odd = tf.odd_cycles();
        // first minimum in lexicographic matching order
        if best.as_ref().is_none_or(|(b, _)| odd < *b) {
            best = Some((odd, m.to_vec()));
        }
        if let Some(e) = e {
            let q = tf.odd_cycles_avoiding(e);
            forced = Some(forced.map_or(q, |f| f.min(q)));
        }
    });
    Ok(OddnessReport {
        oddness: best.as_ref().map(|b| b.0),
        witness: best.map(|(_, m)| TwoFactor::complement_of(g, &m)),
        two_factors: count,
        forced_odd_avoiding_e: forced,
    })
}

/// Minimum over 2-factors of the number of odd cycles that avoid both
/// endpoints of `e`.
pub fn forced_odd_count(g: &Graph, e: Edge) -> Result<usize> {
    oddness_with_edge(g, Some(e))?.forced_odd_avoiding_e.ok_or(Error::NoTwoFactor)
}
