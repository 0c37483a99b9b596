//! Exact branch-and-bound over edge subsets with prescribed vertex degrees.
//!
//! Every cycle and path problem in this crate is phrased as: choose a set of
//! "in" edges so that each vertex has in-degree 0 or 2 (or exactly 1 for a
//! path terminal), the in-edges form the requested number of closed cycles or
//! terminal-to-terminal paths, and the number of covered vertices is
//! maximised. Branching extends open fragments one edge at a time; degree
//! propagation forces edges at every vertex whose options have run out, and
//! the bound is the size of the components of the still-available graph that
//! can be reached from the partial solution.

use crate::graph::{Edge, Graph};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum EdgeState {
    Free,
    In,
    Out,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Kind {
    /// In-degree 0 or 2.
    Optional,
    /// In-degree exactly 2.
    Required,
    /// In-degree exactly 1.
    Terminal,
    /// In-degree 0.
    Excluded,
}

/// What the in-edges must form.
#[derive(Clone, Debug)]
pub enum Shape {
    /// `count` vertex-disjoint cycles. With anchors, `anchors.len() == count`
    /// and each cycle contains exactly one anchor.
    Cycles { count: usize, anchors: Vec<usize> },
    /// Vertex-disjoint paths joining each listed terminal pair.
    Paths { pairs: Vec<(usize, usize)> },
}

/// A problem instance for [`Search`].
#[derive(Clone, Debug)]
pub struct Problem {
    pub shape: Shape,
    pub required_vertices: Vec<usize>,
    pub excluded_vertices: Vec<usize>,
    pub forced_edges: Vec<Edge>,
    pub forbidden_edges: Vec<Edge>,
    /// Uncovered vertices must form an independent set.
    pub dominating: bool,
    /// Stop at the first feasible solution instead of maximising.
    pub first_only: bool,
}

impl Problem {
    pub fn cycles(count: usize, anchors: Vec<usize>) -> Self {
        Problem {
            shape: Shape::Cycles { count, anchors },
            required_vertices: Vec::new(),
            excluded_vertices: Vec::new(),
            forced_edges: Vec::new(),
            forbidden_edges: Vec::new(),
            dominating: false,
            first_only: false,
        }
    }

    pub fn paths(pairs: Vec<(usize, usize)>) -> Self {
        Problem { shape: Shape::Paths { pairs }, ..Problem::cycles(0, Vec::new()) }
    }
}

/// Optimal (or first) solution: its in-edges and covered vertex count.
#[derive(Clone, Debug)]
pub struct Solution {
    pub edges: Vec<Edge>,
    pub covered: usize,
}

#[derive(Clone)]
struct State {
    edge: Vec<EdgeState>,
    din: Vec<u8>,
    dout: Vec<u8>,
    kind: Vec<Kind>,
    /// For a fragment end: the opposite end. Meaningless elsewhere.
    mate: Vec<u32>,
    closed: usize,
    /// Anchors already lying on a closed cycle.
    anchors_done: u32,
    in_edges: usize,
}

pub struct Search<'a> {
    g: &'a Graph,
    edges: Vec<Edge>,
    inc: Vec<Vec<(usize, usize)>>,
    problem: Problem,
    terminal_partner: Vec<Option<usize>>,
    anchor_index: Vec<Option<usize>>,
    best: Option<Solution>,
    /// Target to beat: solutions must cover strictly more than this.
    floor: usize,
    pub nodes: u64,
}

impl<'a> Search<'a> {
    pub fn new(g: &'a Graph, problem: Problem) -> Self {
        let edges = g.edges();
        let mut inc = vec![Vec::new(); g.n()];
        for (id, e) in edges.iter().enumerate() {
            inc[e.0].push((e.1, id));
            inc[e.1].push((e.0, id));
        }
        let mut terminal_partner = vec![None; g.n()];
        if let Shape::Paths { pairs } = &problem.shape {
            for &(s, t) in pairs {
                terminal_partner[s] = Some(t);
                terminal_partner[t] = Some(s);
            }
        }
        let mut anchor_index = vec![None; g.n()];
        if let Shape::Cycles { anchors, .. } = &problem.shape {
            for (i, &a) in anchors.iter().enumerate() {
                anchor_index[a] = Some(i);
            }
        }
        Search { g, edges, inc, problem, terminal_partner, anchor_index, best: None, floor: 0, nodes: 0 }
    }

    /// Only accept solutions covering more than `floor` vertices.
    pub fn with_floor(mut self, floor: usize) -> Self {
        self.floor = floor;
        self
    }

    pub fn run(mut self) -> Option<Solution> {
        let n = self.g.n();
        let mut st = State {
            edge: vec![EdgeState::Free; self.edges.len()],
            din: vec![0; n],
            dout: vec![0; n],
            kind: vec![Kind::Optional; n],
            mate: (0..n as u32).collect(),
            closed: 0,
            anchors_done: 0,
            in_edges: 0,
        };
        let mut queue = Vec::new();
        let mut ok = true;
        for &v in &self.problem.required_vertices.clone() {
            ok &= self.set_kind(&mut st, v, Kind::Required, &mut queue);
        }
        if let Shape::Cycles { anchors, .. } = self.problem.shape.clone() {
            for a in anchors {
                ok &= self.set_kind(&mut st, a, Kind::Required, &mut queue);
            }
        }
        if let Shape::Paths { pairs } = self.problem.shape.clone() {
            for (s, t) in pairs {
                ok &= s != t && self.set_kind(&mut st, s, Kind::Terminal, &mut queue);
                ok &= self.set_kind(&mut st, t, Kind::Terminal, &mut queue);
            }
        }
        for &v in &self.problem.excluded_vertices.clone() {
            ok &= self.set_kind(&mut st, v, Kind::Excluded, &mut queue);
        }
        for e in self.problem.forced_edges.clone() {
            match self.g.edge_id(e) {
                Some(id) => ok &= self.set_edge(&mut st, id, EdgeState::In, &mut queue),
                None => ok = false,
            }
        }
        for e in self.problem.forbidden_edges.clone() {
            if let Some(id) = self.g.edge_id(e) {
                ok &= self.set_edge(&mut st, id, EdgeState::Out, &mut queue);
            }
        }
        queue.extend(0..n);
        if ok && self.propagate(&mut st, &mut queue) {
            self.branch(st);
        }
        self.best
    }

    fn done(&self) -> bool {
        self.problem.first_only && self.best.is_some()
    }

    fn branch(&mut self, st: State) {
        if self.done() {
            return;
        }
        self.nodes += 1;
        let Some(ub) = self.upper_bound(&st) else { return };
        if ub <= self.floor || self.best.as_ref().is_some_and(|b| ub <= b.covered) {
            return;
        }

        // Extend the most constrained open fragment end.
        let mut pick: Option<(usize, usize)> = None;
        for v in 0..self.g.n() {
            let needs_one = match st.kind[v] {
                Kind::Required => st.din[v] == 1,
                Kind::Terminal => st.din[v] == 0,
                _ => false,
            };
            if needs_one {
                let free = self.free_degree(&st, v);
                if pick.is_none_or(|(_, f)| free < f) {
                    pick = Some((v, free));
                }
            }
        }
        if let Some((v, _)) = pick {
            let choices: Vec<usize> = self.free_edges(&st, v);
            for &id in &choices {
                let mut next = st.clone();
                let mut queue = Vec::new();
                let mut ok = self.set_edge(&mut next, id, EdgeState::In, &mut queue);
                for &other in &choices {
                    if other != id {
                        ok &= self.set_edge(&mut next, other, EdgeState::Out, &mut queue);
                    }
                }
                if ok && self.propagate(&mut next, &mut queue) {
                    self.branch(next);
                }
                if self.done() {
                    return;
                }
            }
            return;
        }

        // Start a new fragment at a required vertex that is still untouched.
        if let Some(v) = (0..self.g.n()).find(|&v| st.kind[v] == Kind::Required && st.din[v] == 0) {
            self.branch_on_pairs(&st, v, false);
            return;
        }

        let cycles_left = match &self.problem.shape {
            Shape::Cycles { count, .. } => count.saturating_sub(st.closed),
            Shape::Paths { .. } => 0,
        };
        if cycles_left > 0 && st.in_edges == 0 {
            // Unanchored cycle: root it at the lowest vertex still available.
            if let Some(v) = (0..self.g.n()).find(|&v| st.kind[v] == Kind::Optional) {
                self.branch_on_pairs(&st, v, true);
            }
            return;
        }

        // Nothing open: everything left is out.
        let mut fin = st;
        let mut queue = Vec::new();
        let mut ok = true;
        for id in 0..self.edges.len() {
            if fin.edge[id] == EdgeState::Free {
                ok &= self.set_edge(&mut fin, id, EdgeState::Out, &mut queue);
            }
        }
        if ok && self.propagate(&mut fin, &mut queue) {
            self.accept(&fin);
        }
    }

    /// Branch on which two free edges carry `v`; optionally also on `v`
    /// being excluded.
    fn branch_on_pairs(&mut self, st: &State, v: usize, allow_exclude: bool) {
        let free = self.free_edges(st, v);
        for i in 0..free.len() {
            for j in i + 1..free.len() {
                let mut next = st.clone();
                let mut queue = Vec::new();
                let mut ok = self.set_kind(&mut next, v, Kind::Required, &mut queue);
                ok &= self.set_edge(&mut next, free[i], EdgeState::In, &mut queue);
                ok &= self.set_edge(&mut next, free[j], EdgeState::In, &mut queue);
                if ok && self.propagate(&mut next, &mut queue) {
                    self.branch(next);
                }
                if self.done() {
                    return;
                }
            }
        }
        if allow_exclude {
            let mut next = st.clone();
            let mut queue = Vec::new();
            if self.set_kind(&mut next, v, Kind::Excluded, &mut queue) && self.propagate(&mut next, &mut queue) {
                self.branch(next);
            }
        }
    }

    fn accept(&mut self, st: &State) {
        match &self.problem.shape {
            Shape::Cycles { count, .. } => {
                if st.closed != *count {
                    return;
                }
            }
            Shape::Paths { .. } => {
                if (0..self.g.n()).any(|v| st.kind[v] == Kind::Terminal && st.din[v] != 1) {
                    return;
                }
            }
        }
        if (0..self.g.n()).any(|v| st.kind[v] == Kind::Required && st.din[v] != 2) {
            return;
        }
        let covered = st.din.iter().filter(|&&d| d > 0).count();
        if covered <= self.floor || self.best.as_ref().is_some_and(|b| covered <= b.covered) {
            return;
        }
        let edges = (0..self.edges.len()).filter(|&id| st.edge[id] == EdgeState::In).map(|id| self.edges[id]).collect();
        self.best = Some(Solution { edges, covered });
    }

    fn free_degree(&self, st: &State, v: usize) -> usize {
        self.inc[v].iter().filter(|&&(_, id)| st.edge[id] == EdgeState::Free).count()
    }

    fn free_edges(&self, st: &State, v: usize) -> Vec<usize> {
        self.inc[v].iter().filter(|&&(_, id)| st.edge[id] == EdgeState::Free).map(|&(_, id)| id).collect()
    }

    fn set_kind(&mut self, st: &mut State, v: usize, kind: Kind, queue: &mut Vec<usize>) -> bool {
        let cur = st.kind[v];
        if cur == kind {
            return true;
        }
        if cur != Kind::Optional {
            return false;
        }
        st.kind[v] = kind;
        queue.push(v);
        if kind == Kind::Excluded && self.problem.dominating {
            for i in 0..self.inc[v].len() {
                let w = self.inc[v][i].0;
                if !self.set_kind(st, w, Kind::Required, queue) {
                    return false;
                }
            }
        }
        true
    }

    fn set_edge(&mut self, st: &mut State, id: usize, to: EdgeState, queue: &mut Vec<usize>) -> bool {
        match st.edge[id] {
            EdgeState::Free => {}
            cur => return cur == to,
        }
        st.edge[id] = to;
        let Edge(u, v) = self.edges[id];
        queue.push(u);
        queue.push(v);
        if to == EdgeState::Out {
            st.dout[u] += 1;
            st.dout[v] += 1;
            return true;
        }
        // interior vertices have stale mates, so reject before consulting them
        if st.din[u] >= 2 || st.din[v] >= 2 {
            return false;
        }
        st.din[u] += 1;
        st.din[v] += 1;
        st.in_edges += 1;
        let a = st.mate[u] as usize;
        let b = st.mate[v] as usize;
        if a == v {
            return self.close_cycle(st, u, queue);
        }
        st.mate[a] = b as u32;
        st.mate[b] = a as u32;
        if let Shape::Paths { .. } = self.problem.shape {
            let ta = st.kind[a] == Kind::Terminal && st.din[a] == 1;
            let tb = st.kind[b] == Kind::Terminal && st.din[b] == 1;
            if ta && tb && self.terminal_partner[a] != Some(b) {
                return false;
            }
        }
        true
    }

    fn close_cycle(&mut self, st: &mut State, start: usize, queue: &mut Vec<usize>) -> bool {
        let Shape::Cycles { count, anchors } = &self.problem.shape else { return false };
        let count = *count;
        let has_anchors = !anchors.is_empty();
        if st.closed >= count {
            return false;
        }
        let cycle = self.walk_cycle(st, start);
        if has_anchors {
            let hits: Vec<usize> = cycle.iter().filter_map(|&v| self.anchor_index[v]).collect();
            if hits.len() != 1 || st.anchors_done & (1 << hits[0]) != 0 {
                return false;
            }
            st.anchors_done |= 1 << hits[0];
        }
        st.closed += 1;
        if st.closed == count {
            let on_cycles: usize = st.din.iter().filter(|&&d| d > 0).count();
            // every in-edge must lie on a closed cycle
            if st.in_edges != on_cycles {
                return false;
            }
            for id in 0..self.edges.len() {
                if st.edge[id] == EdgeState::Free && !self.set_edge(st, id, EdgeState::Out, queue) {
                    return false;
                }
            }
        }
        true
    }

    fn walk_cycle(&self, st: &State, start: usize) -> Vec<usize> {
        let mut out = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            let next = self.inc[cur]
                .iter()
                .find(|&&(w, id)| st.edge[id] == EdgeState::In && w != prev)
                .map(|&(w, _)| w)
                .expect("closed cycle is 2-regular");
            if next == start {
                return out;
            }
            out.push(next);
            prev = cur;
            cur = next;
        }
    }

    fn propagate(&mut self, st: &mut State, queue: &mut Vec<usize>) -> bool {
        while let Some(v) = queue.pop() {
            let deg = self.inc[v].len() as u8;
            let din = st.din[v];
            let avail = deg - st.dout[v];
            let (lo, hi) = match st.kind[v] {
                Kind::Excluded => (0, 0),
                Kind::Terminal => (1, 1),
                Kind::Required => (2, 2),
                Kind::Optional => {
                    if din > 0 {
                        if !self.set_kind(st, v, Kind::Required, queue) {
                            return false;
                        }
                    } else if avail < 2 && !self.set_kind(st, v, Kind::Excluded, queue) {
                        return false;
                    }
                    continue;
                }
            };
            if din > hi || avail < lo {
                return false;
            }
            if din == hi {
                for i in 0..self.inc[v].len() {
                    let id = self.inc[v][i].1;
                    if st.edge[id] == EdgeState::Free && !self.set_edge(st, id, EdgeState::Out, queue) {
                        return false;
                    }
                }
            } else if avail == lo {
                for i in 0..self.inc[v].len() {
                    let id = self.inc[v][i].1;
                    if st.edge[id] == EdgeState::Free && !self.set_edge(st, id, EdgeState::In, queue) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Covered-vertex bound from the components of the available graph, or
    /// `None` when the partial solution can no longer be completed.
    fn upper_bound(&self, st: &State) -> Option<usize> {
        let n = self.g.n();
        let mut comp = vec![usize::MAX; n];
        let mut sizes = Vec::new();
        let mut stack = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX || st.kind[s] == Kind::Excluded {
                continue;
            }
            let c = sizes.len();
            comp[s] = c;
            stack.push(s);
            let mut size = 0;
            while let Some(v) = stack.pop() {
                size += 1;
                for &(w, id) in &self.inc[v] {
                    if st.edge[id] != EdgeState::Out && st.kind[w] != Kind::Excluded && comp[w] == usize::MAX {
                        comp[w] = c;
                        stack.push(w);
                    }
                }
            }
            sizes.push(size);
        }
        let mut seeded = vec![false; sizes.len()];
        let mut seed_comps = 0;
        for v in 0..n {
            if matches!(st.kind[v], Kind::Required | Kind::Terminal) && !seeded[comp[v]] {
                seeded[comp[v]] = true;
                seed_comps += 1;
            }
        }
        match &self.problem.shape {
            Shape::Paths { pairs } => {
                if pairs.iter().any(|&(s, t)| comp[s] != comp[t]) {
                    return None;
                }
            }
            Shape::Cycles { anchors, .. } if anchors.is_empty() => {
                // a single unanchored cycle lives in one component
                if seed_comps == 0 {
                    return sizes.iter().copied().max();
                }
                if seed_comps > 1 {
                    return None;
                }
            }
            Shape::Cycles { .. } => {}
        }
        Some(sizes.iter().zip(&seeded).filter(|(_, &s)| s).map(|(z, _)| z).sum())
    }
}

/// Orders the edges of a single cycle into a vertex sequence.
pub fn edges_to_cycle(edges: &[Edge]) -> Vec<usize> {
    chain_from(edges, edges[0].0, true)
}

/// Splits a set of vertex-disjoint cycles into vertex sequences.
pub fn edges_to_cycles(edges: &[Edge]) -> Vec<Vec<usize>> {
    let mut remaining: Vec<Edge> = edges.to_vec();
    let mut out = Vec::new();
    while let Some(&first) = remaining.first() {
        let cyc = chain_from(&remaining, first.0, true);
        let set: std::collections::HashSet<usize> = cyc.iter().copied().collect();
        remaining.retain(|e| !set.contains(&e.0));
        out.push(cyc);
    }
    out
}

/// Vertex sequence of the path with one end at `start`.
pub fn edges_to_path(edges: &[Edge], start: usize) -> Vec<usize> {
    chain_from(edges, start, false)
}

fn chain_from(edges: &[Edge], start: usize, closed: bool) -> Vec<usize> {
    let mut adj: std::collections::HashMap<usize, Vec<usize>> = std::collections::HashMap::new();
    for e in edges {
        adj.entry(e.0).or_default().push(e.1);
        adj.entry(e.1).or_default().push(e.0);
    }
    let mut out = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(w) = adj.get(&cur).and_then(|l| l.iter().copied().find(|&w| w != prev)) {
        if w == start && closed {
            break;
        }
        out.push(w);
        prev = cur;
        cur = w;
    }
    out
}
