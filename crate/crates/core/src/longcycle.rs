//! Building long cycles in a substitution from a closed trail of the frame:
//! every frame vertex the trail passes once becomes a longest path through
//! its block, every vertex passed twice becomes two disjoint block paths
//! realising the trail's transition there.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Cycle, Graph, MultiGraph, Path};
use crate::search::{self, Problem, Search};
use crate::substitution::{self, BlockMap};

/// Which spanning even subgraph `T` of the frame to route along.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubgraphMode {
    /// `T = F`; every block is crossed twice.
    #[default]
    Full,
    /// `T` is a Hamiltonian cycle of `F`; every block is crossed once.
    Cycle,
}

/// A spanning subgraph of the frame with all degrees even.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerianSubgraph {
    pub graph: MultiGraph,
    /// Frame edge id of every edge of `graph`.
    pub frame_edge: Vec<usize>,
}

pub fn spanning_eulerian_subgraph(f: &MultiGraph, mode: SubgraphMode) -> Result<EulerianSubgraph> {
    substitution::check_frame(f)?;
    let ids: Vec<usize> = match mode {
        SubgraphMode::Full => (0..f.m()).collect(),
        SubgraphMode::Cycle => hamiltonian_cycle(f).ok_or_else(|| Error::InvalidInput("frame has no Hamiltonian cycle".into()))?,
    };
    let (graph, frame_edge) = f.edge_subgraph(&ids);
    Ok(EulerianSubgraph { graph, frame_edge })
}

/// Edge ids of a Hamiltonian cycle of a multigraph, first found in edge-id
/// order.
fn hamiltonian_cycle(f: &MultiGraph) -> Option<Vec<usize>> {
    let n = f.n();
    let mut used = vec![false; n];
    let mut path = Vec::new();
    used[0] = true;
    return rec(f, 0, &mut used, &mut path).then_some(path);

    fn rec(f: &MultiGraph, v: usize, used: &mut [bool], path: &mut Vec<usize>) -> bool {
        if path.len() + 1 == f.n() {
            for id in f.incident(v) {
                if f.edge(id).other(v) == 0 && path.first() != Some(&id) {
                    path.push(id);
                    return true;
                }
            }
            return false;
        }
        for id in f.incident(v) {
            let w = f.edge(id).other(v);
            if !used[w] {
                used[w] = true;
                path.push(id);
                if rec(f, w, used, path) {
                    return true;
                }
                path.pop();
                used[w] = false;
            }
        }
        false
    }
}

/// Exact longest path between two distinct vertices.
pub fn longest_path_between(block: &Graph, u1: usize, u2: usize) -> Result<Path> {
    if u1 == u2 || u1 >= block.n() || u2 >= block.n() {
        return Err(Error::InvalidInput(format!("need two distinct vertices, got {u1} and {u2}")));
    }
    let sol = Search::new(block, Problem::paths(vec![(u1, u2)])).run().ok_or(Error::Disconnected)?;
    Ok(search::edges_to_path(&sol.edges, u1))
}

/// Vertex-disjoint paths `s1 → t1` and `s2 → t2` of maximum total vertex
/// count. Blocks larger than `exact_limit` only get the first pair found.
pub fn two_disjoint_paths_with_limit(
    block: &Graph,
    (s1, t1): (usize, usize),
    (s2, t2): (usize, usize),
    exact_limit: usize,
) -> Option<(Path, Path)> {
    let ends = [s1, t1, s2, t2];
    if ends.iter().any(|&v| v >= block.n()) || (1..4).any(|i| ends[..i].contains(&ends[i])) {
        return None;
    }
    let problem = Problem { first_only: block.n() > exact_limit, ..Problem::paths(vec![(s1, t1), (s2, t2)]) };
    let sol = Search::new(block, problem).run()?;
    Some((search::edges_to_path(&sol.edges, s1), search::edges_to_path(&sol.edges, s2)))
}

pub const EXACT_BLOCK_LIMIT: usize = 26;

pub fn two_disjoint_paths(block: &Graph, p1: (usize, usize), p2: (usize, usize)) -> Option<(Path, Path)> {
    two_disjoint_paths_with_limit(block, p1, p2, EXACT_BLOCK_LIMIT)
}

/// One way to split the four trail edges at a vertex of `T` into two
/// transitions, with the block paths that realise it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pairing {
    /// Two pairs of `T` edge ids.
    pub pairs: [(usize, usize); 2],
    /// `G` paths joining the attachments of each pair, in `pairs` order.
    pub paths: [Path; 2],
    pub total: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransitionSystem {
    /// Realisable pairings per `T` vertex, best total first; empty at
    /// degree-2 vertices.
    pub allowed: Vec<Vec<Pairing>>,
}

/// Paths inside block 0, in `H`-vertex coordinates, so that every block can
/// reuse the same solutions.
struct Template {
    graph: Graph,
    /// Sorted `H` vertex labels; local vertex `i` copies `labels[i]`.
    labels: Vec<usize>,
    /// Per block, `G` vertex of each local vertex.
    to_g: Vec<Vec<usize>>,
    path2: HashMap<(usize, usize), Option<Path>>,
    path4: HashMap<[usize; 4], Option<(Path, Path)>>,
}

impl Template {
    fn new(g: &Graph, bm: &BlockMap) -> Template {
        let verts = bm.block_vertices(0);
        let others: Vec<usize> = (0..g.n()).filter(|&v| bm.block_of[v] != 0).collect();
        let (raw, keep) = g.delete_vertices(&others);
        let mut labels: Vec<usize> = verts.iter().map(|&v| bm.h_vertex_of[v]).collect();
        labels.sort_unstable();
        let perm: Vec<usize> = keep.iter().map(|&v| labels.binary_search(&bm.h_vertex_of[v]).unwrap()).collect();
        let graph = raw.relabel(&perm);
        let to_g = (0..bm.blocks())
            .map(|i| {
                let mut map = vec![0; labels.len()];
                for v in bm.block_vertices(i) {
                    map[labels.binary_search(&bm.h_vertex_of[v]).unwrap()] = v;
                }
                map
            })
            .collect();
        Template { graph, labels, to_g, path2: HashMap::new(), path4: HashMap::new() }
    }

    fn local(&self, bm: &BlockMap, v: usize) -> usize {
        self.labels.binary_search(&bm.h_vertex_of[v]).unwrap()
    }

    fn solve(&mut self, keys2: Vec<(usize, usize)>, keys4: Vec<[usize; 4]>) {
        let graph = &self.graph;
        let (r2, r4) = std::thread::scope(|s| {
            let h2: Vec<_> = keys2.iter().map(|&(a, b)| s.spawn(move || longest_path_between(graph, a, b).ok())).collect();
            let h4: Vec<_> = keys4.iter().map(|k| s.spawn(move || two_disjoint_paths(graph, (k[0], k[1]), (k[2], k[3])))).collect();
            (
                h2.into_iter().map(|h| h.join().unwrap()).collect::<Vec<_>>(),
                h4.into_iter().map(|h| h.join().unwrap()).collect::<Vec<_>>(),
            )
        });
        self.path2.extend(keys2.into_iter().zip(r2));
        self.path4.extend(keys4.into_iter().zip(r4));
    }

    fn lift(&self, block: usize, p: &Path) -> Path {
        p.iter().map(|&v| self.to_g[block][v]).collect()
    }
}

fn attachment(bm: &BlockMap, t: &EulerianSubgraph, block: usize, t_edge: usize) -> Result<usize> {
    bm.attachment_for(block, t.frame_edge[t_edge])
        .ok_or_else(|| Error::InvalidInput(format!("block {block} has no attachment for frame edge {}", t.frame_edge[t_edge])))
}

const SPLITS: [[usize; 4]; 3] = [[0, 1, 2, 3], [0, 2, 1, 3], [0, 3, 1, 2]];

fn build_transitions(bm: &BlockMap, t: &EulerianSubgraph, tpl: &mut Template) -> Result<TransitionSystem> {
    let mut keys4 = Vec::new();
    let mut requests = Vec::new();
    for v in 0..t.graph.n() {
        let inc = t.graph.incident(v);
        if inc.len() != 4 {
            continue;
        }
        for split in SPLITS {
            let ids = split.map(|i| inc[i]);
            let mut key = [0; 4];
            for (k, &id) in ids.iter().enumerate() {
                key[k] = tpl.local(bm, attachment(bm, t, v, id)?);
            }
            if !keys4.contains(&key) && !tpl.path4.contains_key(&key) {
                keys4.push(key);
            }
            requests.push((v, ids, key));
        }
    }
    tpl.solve(Vec::new(), keys4);
    let mut allowed = vec![Vec::new(); t.graph.n()];
    for (v, ids, key) in requests {
        if let Some((p, q)) = &tpl.path4[&key] {
            let paths = [tpl.lift(v, p), tpl.lift(v, q)];
            let total = paths[0].len() + paths[1].len();
            allowed[v].push(Pairing { pairs: [(ids[0], ids[1]), (ids[2], ids[3])], paths, total });
        }
    }
    for (v, list) in allowed.iter_mut().enumerate() {
        if t.graph.degree(v) == 4 && list.is_empty() {
            return Err(Error::NoRealisation { block: v });
        }
        list.sort_by_key(|p| std::cmp::Reverse(p.total));
    }
    Ok(TransitionSystem { allowed })
}

/// Partner of `edge` at `v` under the pairing chosen there (degree-2
/// vertices pair their two edges).
fn partner(t: &MultiGraph, ts: &TransitionSystem, choice: &[usize], v: usize, edge: usize) -> usize {
    if t.degree(v) == 2 {
        let inc = t.incident(v);
        return if inc[0] == edge { inc[1] } else { inc[0] };
    }
    let p = &ts.allowed[v][choice[v]].pairs;
    for &(a, b) in p {
        if a == edge {
            return b;
        }
        if b == edge {
            return a;
        }
    }
    unreachable!("edge {edge} not at vertex {v}")
}

/// Follows transitions from edge 0. Returns the trail as `T` edge ids with
/// the vertex each edge is left from, if it uses every edge.
fn follow(t: &MultiGraph, ts: &TransitionSystem, choice: &[usize]) -> Option<Vec<(usize, usize)>> {
    let start = t.edge(0).0;
    let (mut v, mut e) = (start, 0);
    let mut out = Vec::with_capacity(t.m());
    loop {
        out.push((e, v));
        let w = t.edge(e).other(v);
        let next = partner(t, ts, choice, w, e);
        v = w;
        e = next;
        if (e, v) == (0, start) || out.len() > t.m() {
            break;
        }
    }
    (out.len() == t.m()).then_some(out)
}

/// Trail edges with the pairing index chosen at each degree-4 vertex.
struct Trail {
    steps: Vec<(usize, usize)>,
    choice: Vec<usize>,
    total: usize,
}

/// Exhaustive over pairing choices when there are at most this many
/// degree-4 vertices; first compatible trail otherwise.
const EXHAUSTIVE_TRAIL_LIMIT: usize = 10;

fn search_trail(t: &MultiGraph, ts: &TransitionSystem) -> Option<Trail> {
    let four: Vec<usize> = (0..t.n()).filter(|&v| t.degree(v) == 4).collect();
    let exhaustive = four.len() <= EXHAUSTIVE_TRAIL_LIMIT;
    let mut choice = vec![0; t.n()];
    let mut best: Option<Trail> = None;
    rec(t, ts, &four, 0, &mut choice, exhaustive, &mut best);
    return best;

    fn rec(t: &MultiGraph, ts: &TransitionSystem, four: &[usize], i: usize, choice: &mut Vec<usize>, exhaustive: bool, best: &mut Option<Trail>) {
        if !exhaustive && best.is_some() {
            return;
        }
        if i == four.len() {
            if let Some(steps) = follow(t, ts, choice) {
                let total = four.iter().map(|&v| ts.allowed[v][choice[v]].total).sum();
                if best.as_ref().is_none_or(|b| total > b.total) {
                    *best = Some(Trail { steps, choice: choice.clone(), total });
                }
            }
            return;
        }
        let v = four[i];
        for c in 0..ts.allowed[v].len() {
            choice[v] = c;
            rec(t, ts, four, i + 1, choice, exhaustive, best);
        }
    }
}

/// A closed trail through every edge of `t` whose transition at each
/// degree-4 vertex is one of the allowed pairings, as `T` edge ids.
pub fn compatible_eulerian_trail(t: &MultiGraph, ts: &TransitionSystem) -> Result<Vec<usize>> {
    if t.m() == 0 || !(0..t.n()).all(|v| t.degree(v) == 2 || t.degree(v) == 4) {
        return Err(Error::InvalidInput("trail graph must have all degrees 2 or 4".into()));
    }
    search_trail(t, ts).map(|tr| tr.steps.into_iter().map(|s| s.0).collect()).ok_or(Error::NoCompatibleTrail)
}

/// Whether `trail` is a closed Eulerian trail of `t` whose transitions at
/// degree-4 vertices are all allowed.
pub fn is_compatible(t: &MultiGraph, ts: &TransitionSystem, trail: &[usize]) -> bool {
    let mut seen = vec![false; t.m()];
    if trail.len() != t.m() || trail.iter().any(|&e| e >= t.m() || std::mem::replace(&mut seen[e], true)) {
        return false;
    }
    let allowed_at = |v: usize, a: usize, b: usize| {
        t.degree(v) == 2 || ts.allowed[v].iter().any(|p| p.pairs.iter().any(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a)))
    };
    let first = t.edge(trail[0]);
    [first.0, first.1].into_iter().any(|start| {
        let mut v = start;
        for k in 0..trail.len() {
            let (a, b) = (trail[k], trail[(k + 1) % trail.len()]);
            let w = t.edge(a).other(v);
            if !t.edge(b).contains(w) || !allowed_at(w, a, b) {
                return false;
            }
            v = w;
        }
        v == start
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstructedCycle {
    pub cycle: Cycle,
    /// The closed trail as frame edge ids, in the order the cycle crosses
    /// them.
    pub trail: Vec<usize>,
    /// Per block, the paths the cycle takes through it.
    pub per_block_paths: Vec<Vec<Path>>,
    pub length: usize,
    pub mode: SubgraphMode,
}

pub fn construct_long_cycle(g: &Graph, bm: &BlockMap, f: &MultiGraph, mode: SubgraphMode) -> Result<ConstructedCycle> {
    if bm.blocks() != f.n() || bm.block_of.len() != g.n() {
        return Err(Error::InvalidInput("block map does not match graph and frame".into()));
    }
    let t = spanning_eulerian_subgraph(f, mode)?;
    let mut tpl = Template::new(g, bm);
    let ts = build_transitions(bm, &t, &mut tpl)?;

    let mut keys2 = Vec::new();
    for v in (0..t.graph.n()).filter(|&v| t.graph.degree(v) == 2) {
        let inc = t.graph.incident(v);
        let key = (tpl.local(bm, attachment(bm, &t, v, inc[0])?), tpl.local(bm, attachment(bm, &t, v, inc[1])?));
        if !keys2.contains(&key) {
            keys2.push(key);
        }
    }
    tpl.solve(keys2, Vec::new());

    let trail = search_trail(&t.graph, &ts).ok_or(Error::NoCompatibleTrail)?;
    let steps = &trail.steps;
    let mut vertices = Vec::with_capacity(g.n());
    let mut per_block_paths = vec![Vec::new(); f.n()];
    for k in 0..steps.len() {
        // block entered by the previous edge and left by this one
        let (out_edge, v) = steps[k];
        let in_edge = steps[(k + steps.len() - 1) % steps.len()].0;
        let (a, b) = (attachment(bm, &t, v, in_edge)?, attachment(bm, &t, v, out_edge)?);
        let path = if t.graph.degree(v) == 2 {
            let key = (tpl.local(bm, a), tpl.local(bm, b));
            match (&tpl.path2.get(&key), &tpl.path2.get(&(key.1, key.0))) {
                (Some(Some(p)), _) => tpl.lift(v, p),
                (_, Some(Some(p))) => tpl.lift(v, p).into_iter().rev().collect(),
                _ => return Err(Error::NoRealisation { block: v }),
            }
        } else {
            let p = &ts.allowed[v][trail.choice[v]];
            let i = p.pairs.iter().position(|&(x, y)| (x, y) == (in_edge, out_edge) || (x, y) == (out_edge, in_edge)).unwrap();
            p.paths[i].clone()
        };
        let path: Path = if path.first() == Some(&a) { path } else { path.into_iter().rev().collect() };
        vertices.extend_from_slice(&path);
        per_block_paths[v].push(path);
    }
    let built = ConstructedCycle {
        length: vertices.len(),
        cycle: Cycle(vertices),
        trail: steps.iter().map(|s| t.frame_edge[s.0]).collect(),
        per_block_paths,
        mode,
    };
    verify_constructed(g, bm, &built)?;
    Ok(built)
}

/// Frame edge id of every block-crossing edge, in cycle order starting
/// from the first crossing.
pub fn contraction_sequence(g: &Graph, bm: &BlockMap, c: &Cycle) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    let vs = c.vertices();
    for k in 0..vs.len() {
        let (u, w) = (vs[k], vs[(k + 1) % vs.len()]);
        if !g.has_edge(u, w) {
            return Err(Error::InvalidCycle(format!("{u},{w} is not an edge")));
        }
        if bm.block_of[u] != bm.block_of[w] {
            let id = bm.attachments[bm.block_of[u]]
                .iter()
                .find(|a| a.0 == u)
                .map(|a| a.1)
                .ok_or_else(|| Error::InvalidCycle(format!("{u} is not an attachment")))?;
            out.push(id);
        }
    }
    Ok(out)
}

/// Checks a constructed cycle: valid cycle of `G`, crossings equal the
/// trail edge-for-edge, every block visited, length equal to the sum of
/// block path lengths.
pub fn verify_constructed(g: &Graph, bm: &BlockMap, c: &ConstructedCycle) -> Result<()> {
    c.cycle.validate(g)?;
    if contraction_sequence(g, bm, &c.cycle)? != c.trail {
        return Err(Error::InvalidCycle("block contraction differs from the trail".into()));
    }
    if let Some(b) = c.per_block_paths.iter().position(|p| p.is_empty()) {
        return Err(Error::InvalidCycle(format!("block {b} not visited")));
    }
    let sum: usize = c.per_block_paths.iter().flatten().map(|p| p.len()).sum();
    if sum != c.length || c.length != c.cycle.len() {
        return Err(Error::InvalidCycle("length differs from the block path total".into()));
    }
    Ok(())
}

/// The realisable pairings at every degree-4 vertex of the `T` chosen by
/// `mode`; exposed for inspection of the transition systems themselves.
pub fn transition_system(g: &Graph, bm: &BlockMap, f: &MultiGraph, mode: SubgraphMode) -> Result<(EulerianSubgraph, TransitionSystem)> {
    let t = spanning_eulerian_subgraph(f, mode)?;
    let mut tpl = Template::new(g, bm);
    let ts = build_transitions(bm, &t, &mut tpl)?;
    Ok((t, ts))
}
