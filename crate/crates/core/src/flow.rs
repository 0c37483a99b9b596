//! Unit-capacity max-flow on undirected (multi)graphs with contracted
//! source and sink sets.

use std::collections::VecDeque;

pub(crate) struct UnitFlow {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u8>,
}

impl UnitFlow {
    /// `node_of[v]` maps each original vertex to a flow node; vertices
    /// mapped to the same node are contracted.
    pub fn new(nodes: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut f = UnitFlow { head: vec![Vec::new(); nodes], to: Vec::new(), cap: Vec::new() };
        for (a, b) in edges {
            if a == b {
                continue;
            }
            // one arc pair per undirected edge, capacity 1 each way
            let id = f.to.len();
            f.to.push(b);
            f.cap.push(1);
            f.head[a].push(id);
            f.to.push(a);
            f.cap.push(1);
            f.head[b].push(id + 1);
        }
        f
    }

    /// Max-flow value from `s` to `t`, stopping once it reaches `limit`.
    pub fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let mut flow = 0;
        let n = self.head.len();
        let mut pred = vec![usize::MAX; n];
        while flow < limit {
            pred.iter_mut().for_each(|p| *p = usize::MAX);
            let mut queue = VecDeque::from([s]);
            let mut seen = vec![false; n];
            seen[s] = true;
            while let Some(v) = queue.pop_front() {
                if v == t {
                    break;
                }
                for &arc in &self.head[v] {
                    let w = self.to[arc];
                    if self.cap[arc] > 0 && !seen[w] {
                        seen[w] = true;
                        pred[w] = arc;
                        queue.push_back(w);
                    }
                }
            }
            if !seen[t] {
                break;
            }
            let mut v = t;
            while v != s {
                let arc = pred[v];
                self.cap[arc] -= 1;
                self.cap[arc ^ 1] += 1;
                v = self.to[arc ^ 1];
            }
            flow += 1;
        }
        flow
    }
}
