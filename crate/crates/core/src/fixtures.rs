//! The bundled graph corpus. Snark lists are in nauty's canonical labelling
//! (hosts and edges named in reports refer to these labellings).

use crate::format;
use crate::graph::{Graph, MultiGraph};

pub const K4: &str = include_str!("../fixtures/k4.g6");
pub const K33: &str = include_str!("../fixtures/k33.g6");
pub const PETERSEN: &str = include_str!("../fixtures/petersen.g6");
pub const MOBIUS8: &str = include_str!("../fixtures/mobius8.g6");
pub const PRISM: &str = include_str!("../fixtures/prism.g6");
/// All six snarks on 20 vertices.
pub const SNARKS20: &str = include_str!("../fixtures/snarks20.g6");
/// All twenty snarks on 22 vertices.
pub const SNARKS22: &str = include_str!("../fixtures/snarks22.g6");
/// Fifty of the snarks on 28 vertices.
pub const SNARKS28: &str = include_str!("../fixtures/snarks28.g6");
/// Two vertices joined by four parallel edges.
pub const FRAME_F2: &str = include_str!("../fixtures/f2.s6");
pub const FRAME_K5: &str = include_str!("../fixtures/k5.s6");

fn list(text: &str) -> Vec<Graph> {
    format::parse_graph6_file(text).expect("bundled fixture parses").into_iter().map(|r| r.value).collect()
}

fn one(text: &str) -> Graph {
    list(text).remove(0)
}

/// The small named graphs, by name.
pub fn small() -> Vec<(&'static str, Graph)> {
    vec![("k4", one(K4)), ("k33", one(K33)), ("petersen", one(PETERSEN)), ("mobius8", one(MOBIUS8)), ("prism", one(PRISM))]
}

pub fn snarks20() -> Vec<Graph> {
    list(SNARKS20)
}

pub fn snarks22() -> Vec<Graph> {
    list(SNARKS22)
}

pub fn snarks28() -> Vec<Graph> {
    list(SNARKS28)
}

pub fn frame_f2() -> MultiGraph {
    format::parse_any_multigraph(FRAME_F2).expect("bundled frame parses")
}

pub fn frame_k5() -> MultiGraph {
    format::parse_any_multigraph(FRAME_K5).expect("bundled frame parses")
}

/// Every bundled graph with a stable id such as `snarks20#3`.
pub fn all() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = small().into_iter().map(|(n, g)| (n.to_string(), g)).collect();
    for (name, gs) in [("snarks20", snarks20()), ("snarks22", snarks22()), ("snarks28", snarks28())] {
        out.extend(gs.into_iter().enumerate().map(|(i, g)| (format!("{name}#{i}"), g)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{named, structure};

    #[test]
    fn small_graphs_match_constructions() {
        let s = small();
        assert_eq!(s[0].1, named::k4());
        assert_eq!(s[1].1, named::k33());
        assert_eq!(s[2].1, named::petersen());
        assert_eq!(s[3].1, named::mobius_ladder(8));
        assert_eq!(s[4].1, named::prism());
        assert_eq!(frame_f2().edge_multiset(), named::double_edge_pair().edge_multiset());
        assert_eq!(frame_k5().edge_multiset(), named::k5_frame().edge_multiset());
    }

    #[test]
    fn snark_lists_are_snarks() {
        let (a, b, c) = (snarks20(), snarks22(), snarks28());
        assert_eq!((a.len(), b.len(), c.len()), (6, 20, 50));
        for g in a.iter().chain(&b).chain(&c) {
            assert!(structure::is_snark(g).unwrap());
        }
    }
}
