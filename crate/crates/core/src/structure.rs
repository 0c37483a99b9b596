//! Girth, 3-edge-colourability, cyclic edge connectivity and the snark
//! classification built from them.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::flow::UnitFlow;
use crate::graph::{Graph, MultiGraph};

/// Length of a shortest cycle, or `None` for a forest.
pub fn girth(g: &Graph) -> Option<usize> {
    let n = g.n();
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[root] = 0;
        parent[root] = usize::MAX;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            if best.is_some_and(|b| 2 * dist[v] + 1 >= b) {
                break;
            }
            for &w in g.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    queue.push_back(w);
                } else if parent[v] != w {
                    let len = dist[v] + dist[w] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

/// A proper 3-edge-colouring, indexed by edge id, or `None` if none exists.
pub fn three_edge_colouring(g: &Graph) -> Result<Option<Vec<u8>>> {
    g.require_cubic()?;
    let edges = g.edges();
    let m = edges.len();
    if m == 0 {
        return Ok(Some(Vec::new()));
    }
    let mut colour = vec![u8::MAX; m];
    let mut used = vec![0u8; g.n()];
    let inc: Vec<Vec<usize>> = (0..g.n())
        .map(|v| (0..m).filter(|&i| edges[i].contains(v)).collect())
        .collect();
    // the three edges at vertex 0 can be coloured 0, 1, 2 up to renaming
    for (c, &id) in inc[0].iter().enumerate() {
        colour[id] = c as u8;
        used[edges[id].0] |= 1 << c;
        used[edges[id].1] |= 1 << c;
    }
    let ok = colour_rec(&edges, &mut colour, &mut used);
    Ok(ok.then_some(colour))
}

fn colour_rec(edges: &[crate::graph::Edge], colour: &mut [u8], used: &mut [u8]) -> bool {
    // most constrained uncoloured edge, preferring edges next to coloured ones
    let mut pick: Option<(usize, u8)> = None;
    for (id, e) in edges.iter().enumerate() {
        if colour[id] != u8::MAX {
            continue;
        }
        let avail = !(used[e.0] | used[e.1]) & 7;
        if avail == 0 {
            return false;
        }
        if pick.is_none_or(|(_, a)| avail.count_ones() < a.count_ones()) {
            pick = Some((id, avail));
            if avail.count_ones() == 1 {
                break;
            }
        }
    }
    let Some((id, avail)) = pick else { return true };
    let e = edges[id];
    for c in 0..3u8 {
        if avail & (1 << c) == 0 {
            continue;
        }
        colour[id] = c;
        used[e.0] |= 1 << c;
        used[e.1] |= 1 << c;
        if colour_rec(edges, colour, used) {
            return true;
        }
        used[e.0] &= !(1 << c);
        used[e.1] &= !(1 << c);
        colour[id] = u8::MAX;
    }
    false
}

pub fn is_three_edge_colourable(g: &Graph) -> Result<bool> {
    Ok(three_edge_colouring(g)?.is_some())
}

/// Checks that a colouring gives distinct colours at every vertex.
pub fn is_proper_edge_colouring(g: &Graph, colour: &[u8]) -> bool {
    let edges = g.edges();
    if colour.len() != edges.len() {
        return false;
    }
    let mut seen = vec![0u8; g.n()];
    for (e, &c) in edges.iter().zip(colour) {
        if c > 2 || seen[e.0] & (1 << c) != 0 || seen[e.1] & (1 << c) != 0 {
            return false;
        }
        seen[e.0] |= 1 << c;
        seen[e.1] |= 1 << c;
    }
    true
}

/// Cyclic edge connectivity; `Infinite` when no edge cut separates two cycles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CyclicConnectivity {
    Finite(usize),
    Infinite,
}

impl CyclicConnectivity {
    pub fn at_least(&self, k: usize) -> bool {
        match self {
            CyclicConnectivity::Finite(c) => *c >= k,
            CyclicConnectivity::Infinite => true,
        }
    }
}

impl fmt::Display for CyclicConnectivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CyclicConnectivity::Finite(k) => write!(f, "{k}"),
            CyclicConnectivity::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for CyclicConnectivity {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            CyclicConnectivity::Finite(k) => s.serialize_u64(*k as u64),
            CyclicConnectivity::Infinite => s.serialize_str("infinite"),
        }
    }
}

/// Connected vertex sets of exactly `k` vertices, as sorted vectors.
fn connected_sets(g: &Graph, k: usize) -> Vec<Vec<usize>> {
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut out = Vec::new();
    let mut frontier: Vec<Vec<usize>> = (0..g.n()).map(|v| vec![v]).collect();
    for _ in 1..k {
        let mut next = Vec::new();
        for set in &frontier {
            for &v in set {
                for &w in g.neighbors(v) {
                    if set.contains(&w) {
                        continue;
                    }
                    let mut grown = set.clone();
                    let pos = grown.binary_search(&w).unwrap_err();
                    grown.insert(pos, w);
                    if seen.insert(grown.clone()) {
                        next.push(grown);
                    }
                }
            }
        }
        frontier = next;
    }
    out.append(&mut frontier);
    out.sort();
    out
}

/// True iff some edge cut of at most `k` edges has at least `k` vertices on
/// each side. Such a cut is cyclic (an acyclic side with `j` boundary edges
/// has at most `j - 2` vertices), and a minimum cyclic cut of size `k` with
/// connected sides is always found this way.
fn has_balanced_cut(g: &Graph, k: usize) -> bool {
    if 2 * k > g.n() {
        return false;
    }
    let sets = connected_sets(g, k);
    let edges = g.edges();
    let mut node_of = vec![0usize; g.n()];
    for (i, a) in sets.iter().enumerate() {
        for b in &sets[i + 1..] {
            if a.iter().any(|v| b.binary_search(v).is_ok()) {
                continue;
            }
            // contract a to node 0, b to node 1, others keep their own node
            for (v, slot) in node_of.iter_mut().enumerate() {
                *slot = v + 2;
            }
            for &v in a {
                node_of[v] = 0;
            }
            for &v in b {
                node_of[v] = 1;
            }
            let mut flow = UnitFlow::new(g.n() + 2, edges.iter().map(|e| (node_of[e.0], node_of[e.1])));
            if flow.max_flow(0, 1, k + 1) <= k {
                return true;
            }
        }
    }
    false
}

pub fn cyclic_edge_connectivity(g: &Graph) -> Result<CyclicConnectivity> {
    g.require_cubic()?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    // a shortest cycle is induced, so its g boundary edges form a cut; it is
    // cyclic whenever the rest of the graph still has a cycle
    let Some(gi) = girth(g) else { return Ok(CyclicConnectivity::Infinite) };
    let short = shortest_cycle(g, gi);
    let (rest, _) = g.delete_vertices(&short);
    let upper = if girth(&rest).is_some() { Some(gi) } else { None };
    let limit = upper.map_or(g.n() / 2, |u| u - 1);
    for k in 1..=limit {
        if has_balanced_cut(g, k) {
            return Ok(CyclicConnectivity::Finite(k));
        }
    }
    Ok(upper.map_or(CyclicConnectivity::Infinite, CyclicConnectivity::Finite))
}

/// Vertices of some cycle of length `len`, which must be the girth.
fn shortest_cycle(g: &Graph, len: usize) -> Vec<usize> {
    let n = g.n();
    for root in 0..n {
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    queue.push_back(w);
                } else if parent[v] != w && dist[v] + dist[w] + 1 == len {
                    let trace = |mut x: usize| {
                        let mut p = vec![x];
                        while x != root {
                            x = parent[x];
                            p.push(x);
                        }
                        p
                    };
                    let (a, b) = (trace(v), trace(w));
                    if a.iter().filter(|x| b.contains(x)).count() == 1 {
                        let mut cyc = a;
                        cyc.pop();
                        cyc.extend(b.into_iter().rev());
                        cyc.pop();
                        let mut out = cyc;
                        out.sort_unstable();
                        out.dedup();
                        return out;
                    }
                }
            }
        }
    }
    unreachable!("girth cycle exists")
}

/// True iff every edge cut of `mg` has at least `k` edges.
pub fn is_k_edge_connected(mg: &MultiGraph, k: usize) -> bool {
    if !mg.is_connected() {
        return k == 0;
    }
    (1..mg.n()).all(|t| {
        let mut flow = UnitFlow::new(mg.n(), mg.edges().iter().map(|e| (e.0, e.1)));
        flow.max_flow(0, t, k) >= k
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    ThreeEdgeColorable,
    /// Not 3-edge-colourable and not cyclically 4-edge-connected.
    NonColorable,
    WeakSnark,
    Snark,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SnarkClass {
    pub classification: Classification,
    pub girth: Option<usize>,
    pub cyclic_edge_connectivity: CyclicConnectivity,
}

pub fn classify(g: &Graph) -> Result<SnarkClass> {
    let colourable = is_three_edge_colourable(g)?;
    let cec = cyclic_edge_connectivity(g)?;
    let gi = girth(g);
    let classification = if colourable {
        Classification::ThreeEdgeColorable
    } else if !cec.at_least(4) {
        Classification::NonColorable
    } else if gi.is_some_and(|x| x >= 5) {
        Classification::Snark
    } else {
        Classification::WeakSnark
    };
    Ok(SnarkClass { classification, girth: gi, cyclic_edge_connectivity: cec })
}

/// Snark test that only decides cyclic 4-edge-connectivity, which is much
/// cheaper than computing the exact value on larger graphs.
pub fn is_snark(g: &Graph) -> Result<bool> {
    if !g.is_cubic() || !g.is_connected() || girth(g).is_none_or(|x| x < 5) {
        return Ok(false);
    }
    if is_three_edge_colourable(g)? {
        return Ok(false);
    }
    Ok(!(1..4).any(|k| has_balanced_cut(g, k)))
}
