//! Simple graphs, loop-free multigraphs and cycles.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest vertex count supported by the bitset-based searches.
pub const MAX_VERTICES: usize = 256;

/// An undirected edge with endpoints stored as `(min, max)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge(pub usize, pub usize);

impl Edge {
    pub fn new(u: usize, v: usize) -> Self {
        if u <= v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0 == v || self.1 == v
    }

    pub fn other(&self, v: usize) -> usize {
        if self.0 == v {
            self.1
        } else {
            self.0
        }
    }

    pub fn shares_vertex(&self, other: &Edge) -> bool {
        self.contains(other.0) || self.contains(other.1)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.0, self.1)
    }
}

impl std::str::FromStr for Edge {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once(',')
            .ok_or_else(|| Error::InvalidInput(format!("edge `{s}` is not of the form u,v")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidInput(format!("bad vertex id `{t}` in edge `{s}`")))
        };
        Ok(Edge::new(parse(a)?, parse(b)?))
    }
}

/// A simple undirected graph on vertices `0..n` with sorted adjacency lists.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooLarge { n, max: MAX_VERTICES });
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidInput(format!("edge {u}-{v} out of range for n={n}")));
            }
            if u == v {
                return Err(Error::InvalidInput(format!("loop at vertex {u}")));
            }
            if adj[u].contains(&v) {
                return Err(Error::InvalidInput(format!("parallel edge {u}-{v}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { adj })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges in lexicographic order; the position in this list is the edge id.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.m());
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| Edge(u, v)));
        }
        out
    }

    pub fn edge_id(&self, e: Edge) -> Option<usize> {
        self.edges().binary_search(&e).ok()
    }

    pub fn is_cubic(&self) -> bool {
        self.adj.iter().all(|l| l.len() == 3)
    }

    pub fn require_cubic(&self) -> Result<()> {
        match self.adj.iter().position(|l| l.len() != 3) {
            None => Ok(()),
            Some(v) => Err(Error::NotCubic { vertex: v, degree: self.adj[v].len() }),
        }
    }

    pub fn require_edge(&self, e: Edge) -> Result<()> {
        if self.has_edge(e.0, e.1) {
            Ok(())
        } else {
            Err(Error::NotAnEdge(e))
        }
    }

    pub fn is_connected(&self) -> bool {
        if self.n() == 0 {
            return true;
        }
        let mut seen = vec![false; self.n()];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n()
    }

    /// Graph with `removed` deleted; remaining vertices keep their relative
    /// order. Also returns the new-to-old vertex map.
    pub fn delete_vertices(&self, removed: &[usize]) -> (Graph, Vec<usize>) {
        let keep: Vec<usize> = (0..self.n()).filter(|v| !removed.contains(v)).collect();
        let mut new_id = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            new_id[v] = i;
        }
        let adj = keep
            .iter()
            .map(|&v| self.adj[v].iter().filter_map(|&w| (new_id[w] != usize::MAX).then_some(new_id[w])).collect())
            .collect();
        (Graph { adj }, keep)
    }

    /// Applies a vertex permutation: old vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut adj = vec![Vec::new(); self.n()];
        for (u, list) in self.adj.iter().enumerate() {
            adj[perm[u]] = list.iter().map(|&w| perm[w]).collect();
            adj[perm[u]].sort_unstable();
        }
        Graph { adj }
    }
}

/// A loop-free undirected multigraph. Edge ids are indices into `edges`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<Edge>,
}

impl MultiGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut out = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidInput(format!("edge {u}-{v} out of range for n={n}")));
            }
            if u == v {
                return Err(Error::LoopUnsupported(u));
            }
            out.push(Edge::new(u, v));
        }
        Ok(MultiGraph { n, edges: out })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Edge {
        self.edges[id]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.contains(v)).count()
    }

    /// Ids of the edges incident to `v`, ascending.
    pub fn incident(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&i| self.edges[i].contains(v)).collect()
    }

    pub fn is_regular(&self, d: usize) -> bool {
        (0..self.n).all(|v| self.degree(v) == d)
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_using(&(0..self.edges.len()).collect::<Vec<_>>())
    }

    /// Connectivity of the spanning subgraph made of the given edge ids.
    pub fn is_connected_using(&self, edge_ids: &[usize]) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut comps = self.n;
        for &id in edge_ids {
            let e = self.edges[id];
            let (a, b) = (find(&mut parent, e.0), find(&mut parent, e.1));
            if a != b {
                parent[a] = b;
                comps -= 1;
            }
        }
        comps == 1
    }

    /// Sub-multigraph keeping the listed edge ids (in the given order) on the
    /// same vertex set. Returns the graph and the map new-id → old-id.
    pub fn edge_subgraph(&self, edge_ids: &[usize]) -> (MultiGraph, Vec<usize>) {
        let edges = edge_ids.iter().map(|&i| self.edges[i]).collect();
        (MultiGraph { n: self.n, edges }, edge_ids.to_vec())
    }

    /// Multiplicity of every unordered pair, sorted.
    pub fn edge_multiset(&self) -> Vec<(Edge, usize)> {
        let mut sorted = self.edges.clone();
        sorted.sort_unstable();
        let mut out: Vec<(Edge, usize)> = Vec::new();
        for e in sorted {
            match out.last_mut() {
                Some((last, c)) if *last == e => *c += 1,
                _ => out.push((e, 1)),
            }
        }
        out
    }

    pub fn from_graph(g: &Graph) -> MultiGraph {
        MultiGraph { n: g.n(), edges: g.edges() }
    }
}

/// A cycle given as a cyclic vertex sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cycle(pub Vec<usize>);

impl Cycle {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    /// Consecutive vertex pairs, including the closing pair.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let k = self.0.len();
        (0..k).map(move |i| Edge::new(self.0[i], self.0[(i + 1) % k]))
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.edges().any(|f| f == e)
    }

    /// Rotation starting at the minimum vertex, in the orientation whose
    /// second vertex is smaller.
    pub fn canonical(&self) -> Cycle {
        let k = self.0.len();
        if k == 0 {
            return self.clone();
        }
        let start = (0..k).min_by_key(|&i| self.0[i]).unwrap();
        let fwd: Vec<usize> = (0..k).map(|i| self.0[(start + i) % k]).collect();
        let bwd: Vec<usize> = (0..k).map(|i| self.0[(start + k - i) % k]).collect();
        Cycle(fwd.min(bwd))
    }

    /// Checks length, distinctness and adjacency in `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let k = self.0.len();
        if k < 3 {
            return Err(Error::InvalidCycle(format!("length {k} < 3")));
        }
        let mut seen = vec![false; g.n()];
        for &v in &self.0 {
            if v >= g.n() || seen[v] {
                return Err(Error::InvalidCycle(format!("vertex {v} repeated or out of range")));
            }
            seen[v] = true;
        }
        for e in self.edges() {
            if !g.has_edge(e.0, e.1) {
                return Err(Error::InvalidCycle(format!("{e} is not an edge")));
            }
        }
        Ok(())
    }

    /// True iff every edge of `g` has an endpoint on the cycle.
    pub fn dominates(&self, g: &Graph) -> bool {
        let mut on = vec![false; g.n()];
        for &v in &self.0 {
            on[v] = true;
        }
        g.edges().iter().all(|e| on[e.0] || on[e.1])
    }
}

/// A path given as a vertex sequence from one end to the other.
pub type Path = Vec<usize>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    #[test]
    fn edges_are_sorted_and_ids_stable() {
        let g = named::k4();
        let edges = g.edges();
        assert_eq!(edges.len(), 6);
        assert!(edges.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(g.edge_id(Edge::new(3, 2)), Some(5));
    }

    #[test]
    fn rejects_loops_and_parallel_edges() {
        assert!(Graph::from_edges(3, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 1), (1, 0)]).is_err());
        assert!(matches!(MultiGraph::new(2, vec![(1, 1)]), Err(Error::LoopUnsupported(1))));
    }

    #[test]
    fn multigraph_degree_counts_multiplicity() {
        let f = named::double_edge_pair();
        assert_eq!(f.degree(0), 4);
        assert_eq!(f.degree(1), 4);
        assert_eq!(f.edge_multiset(), vec![(Edge(0, 1), 4)]);
    }

    #[test]
    fn cubic_checks() {
        assert!(named::k4().is_cubic());
        assert!(named::petersen().is_cubic());
        assert!(!named::k5().is_cubic());
    }

    #[test]
    fn cycle_canonical_form() {
        let c = Cycle(vec![3, 1, 0, 2]);
        assert_eq!(c.canonical(), Cycle(vec![0, 1, 3, 2]));
        assert_eq!(Cycle(vec![2, 3, 1, 0]).canonical(), Cycle(vec![0, 1, 3, 2]));
    }

    #[test]
    fn cycle_validation() {
        let g = named::k4();
        assert!(Cycle(vec![0, 1, 2, 3]).validate(&g).is_ok());
        assert!(Cycle(vec![0, 1]).validate(&g).is_err());
        assert!(Cycle(vec![0, 1, 1]).validate(&g).is_err());
        let p = named::prism();
        assert!(Cycle(vec![0, 1, 4]).validate(&p).is_err());
    }

    #[test]
    fn parse_edge_argument() {
        assert_eq!("5,2".parse::<Edge>().unwrap(), Edge(2, 5));
        assert!("5-2".parse::<Edge>().is_err());
    }
}
