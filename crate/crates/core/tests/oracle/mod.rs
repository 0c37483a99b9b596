//! Brute-force reference answers, written without the library's search
//! engine so the two can be compared.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use shortness::{Edge, Graph};

/// All cycles as vertex bitmasks plus their vertex sequences; each cycle
/// once, rooted at its smallest vertex.
pub fn cycles(g: &Graph) -> Vec<(u64, Vec<usize>)> {
    let mut out = Vec::new();
    for s in 0..g.n() {
        let mut path = vec![s];
        walk(g, s, 1u64 << s, &mut path, &mut out);
    }
    return out;

    fn walk(g: &Graph, s: usize, mask: u64, path: &mut Vec<usize>, out: &mut Vec<(u64, Vec<usize>)>) {
        let v = *path.last().unwrap();
        for &w in g.neighbors(v) {
            if w == s && path.len() >= 3 && path[1] < v {
                out.push((mask, path.clone()));
            }
            if w > s && mask >> w & 1 == 0 {
                path.push(w);
                walk(g, s, mask | 1 << w, path, out);
                path.pop();
            }
        }
    }
}

pub fn has_edge(c: &[usize], e: Edge) -> bool {
    (0..c.len()).any(|i| Edge::new(c[i], c[(i + 1) % c.len()]) == e)
}

pub fn circumference(g: &Graph) -> Option<usize> {
    cycles(g).iter().map(|c| c.1.len()).max()
}

/// (through e, exactly one endpoint, both endpoints avoiding e, disjoint
/// pair with x and y on different cycles).
pub fn constrained(g: &Graph, e: Edge) -> [Option<usize>; 4] {
    let cs = cycles(g);
    let (x, y) = (e.0, e.1);
    let on = |m: u64, v: usize| m >> v & 1 == 1;
    let through = cs.iter().filter(|c| has_edge(&c.1, e)).map(|c| c.1.len()).max();
    let one = cs.iter().filter(|c| on(c.0, x) != on(c.0, y)).map(|c| c.1.len()).max();
    let both = cs.iter().filter(|c| on(c.0, x) && on(c.0, y) && !has_edge(&c.1, e)).map(|c| c.1.len()).max();
    let mut pair = None;
    for a in cs.iter().filter(|c| on(c.0, x) && !on(c.0, y)) {
        for b in cs.iter().filter(|c| on(c.0, y) && !on(c.0, x)) {
            if a.0 & b.0 == 0 {
                pair = pair.max(Some(a.1.len() + b.1.len()));
            }
        }
    }
    [through, one, both, pair]
}

/// Whether some cycle contains every edge of `m` and touches every edge.
pub fn dominating_exists(g: &Graph, m: &[Edge]) -> bool {
    cycles(g).iter().any(|(mask, c)| m.iter().all(|&e| has_edge(c, e)) && g.edges().iter().all(|e| mask >> e.0 & 1 == 1 || mask >> e.1 & 1 == 1))
}

/// Every perfect matching as an edge-id bitmask, by bitmask recursion over
/// the lowest unmatched vertex.
pub fn perfect_matchings(g: &Graph) -> Vec<u64> {
    let edges = g.edges();
    let mut out = Vec::new();
    rec(g, &edges, 0, 0, &mut out);
    return out;

    fn rec(g: &Graph, edges: &[Edge], covered: u64, chosen: u64, out: &mut Vec<u64>) {
        let full = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
        if covered == full {
            out.push(chosen);
            return;
        }
        let v = (!covered).trailing_zeros() as usize;
        for (i, e) in edges.iter().enumerate() {
            if e.contains(v) {
                let w = e.other(v);
                if covered >> w & 1 == 0 {
                    rec(g, edges, covered | 1 << v | 1 << w, chosen | 1 << i, out);
                }
            }
        }
    }
}

/// Cycle lengths of the 2-factor left by a perfect matching.
pub fn factor_cycle_lengths(g: &Graph, matching: u64) -> Vec<usize> {
    let edges = g.edges();
    let rest: Vec<(usize, usize)> = (0..edges.len()).filter(|i| matching >> i & 1 == 0).map(|i| (edges[i].0, edges[i].1)).collect();
    let h = Graph::from_edges(g.n(), &rest).unwrap();
    let mut seen = vec![false; g.n()];
    let mut lens = Vec::new();
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        let mut stack = vec![s];
        seen[s] = true;
        let mut size = 0;
        while let Some(v) = stack.pop() {
            size += 1;
            for &w in h.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        lens.push(size);
    }
    lens.sort_unstable();
    lens
}

pub fn oddness(g: &Graph) -> Option<usize> {
    perfect_matchings(g).iter().map(|&m| factor_cycle_lengths(g, m).iter().filter(|&&l| l % 2 == 1).count()).min()
}

/// Minimum edge cut whose two sides both contain a cycle, over all vertex
/// subsets; `None` when no such cut exists.
pub fn cyclic_cut(g: &Graph) -> Option<usize> {
    let n = g.n();
    let edges = g.edges();
    let has_cycle = |mask: u64| {
        // a subgraph has a cycle iff it has more edges than vertices minus components
        let inside: Vec<&Edge> = edges.iter().filter(|e| mask >> e.0 & 1 == 1 && mask >> e.1 & 1 == 1).collect();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], v: usize) -> usize {
            if p[v] != v {
                let r = find(p, p[v]);
                p[v] = r;
            }
            p[v]
        }
        inside.iter().any(|e| {
            let (a, b) = (find(&mut parent, e.0), find(&mut parent, e.1));
            if a == b {
                return true;
            }
            parent[a] = b;
            false
        })
    };
    let full = (1u64 << n) - 1;
    let mut best = None;
    for s in 1..full {
        if s & 1 == 0 {
            continue;
        }
        if has_cycle(s) && has_cycle(full & !s) {
            let cut = edges.iter().filter(|e| (s >> e.0 & 1) != (s >> e.1 & 1)).count();
            best = Some(best.map_or(cut, |b: usize| b.min(cut)));
        }
    }
    best
}

pub fn colourable(g: &Graph) -> bool {
    let edges = g.edges();
    let mut colour = vec![3u8; edges.len()];
    return rec(&edges, 0, &mut colour);

    fn rec(edges: &[Edge], i: usize, colour: &mut [u8]) -> bool {
        if i == edges.len() {
            return true;
        }
        for c in 0..3 {
            let clash = (0..i).any(|j| colour[j] == c && edges[j].shares_vertex(&edges[i]));
            if !clash {
                colour[i] = c;
                if rec(edges, i + 1, colour) {
                    return true;
                }
            }
        }
        colour[i] = 3;
        false
    }
}

/// Longest simple path between two vertices, as a vertex count.
pub fn longest_path(g: &Graph, s: usize, t: usize) -> Option<usize> {
    let mut best = None;
    walk(g, t, 1u64 << s, s, 1, &mut best);
    return best;

    fn walk(g: &Graph, t: usize, mask: u64, v: usize, len: usize, best: &mut Option<usize>) {
        if v == t {
            *best = (*best).max(Some(len));
            return;
        }
        for &w in g.neighbors(v) {
            if mask >> w & 1 == 0 {
                walk(g, t, mask | 1 << w, w, len + 1, best);
            }
        }
    }
}

/// A uniformly paired random connected simple cubic graph on `n` vertices.
pub fn random_cubic(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut points: Vec<usize> = (0..3 * n).map(|p| p / 3).collect();
        points.shuffle(&mut rng);
        let pairs: Vec<(usize, usize)> = points.chunks(2).map(|c| (c[0], c[1])).collect();
        if let Ok(g) = Graph::from_edges(n, &pairs) {
            if g.is_connected() {
                return g;
            }
        }
    }
}

/// Fewest odd 2-factor cycles meeting neither endpoint of `e`, over all
/// perfect matchings.
pub fn forced_odd(g: &Graph, e: Edge) -> Option<usize> {
    let edges = g.edges();
    perfect_matchings(g)
        .iter()
        .map(|&m| {
            let mut comp = vec![usize::MAX; g.n()];
            let mut sizes = Vec::new();
            for s in 0..g.n() {
                if comp[s] != usize::MAX {
                    continue;
                }
                let id = sizes.len();
                let mut stack = vec![s];
                comp[s] = id;
                let mut size = 0;
                while let Some(v) = stack.pop() {
                    size += 1;
                    for (i, f) in edges.iter().enumerate() {
                        if m >> i & 1 == 0 && f.contains(v) {
                            let w = f.other(v);
                            if comp[w] == usize::MAX {
                                comp[w] = id;
                                stack.push(w);
                            }
                        }
                    }
                }
                sizes.push(size);
            }
            (0..sizes.len()).filter(|&c| sizes[c] % 2 == 1 && comp[e.0] != c && comp[e.1] != c).count()
        })
        .min()
}
