//! Small named graphs used throughout the tests and the fixture corpus.

use crate::graph::{Graph, MultiGraph};

pub fn k4() -> Graph {
    complete(4)
}

pub fn k5() -> Graph {
    complete(5)
}

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Graph::from_edges(n, &edges).unwrap()
}

pub fn k33() -> Graph {
    let edges: Vec<_> = (0..3).flat_map(|u| (3..6).map(move |v| (u, v))).collect();
    Graph::from_edges(6, &edges).unwrap()
}

/// Outer 5-cycle `0..5`, spokes `i -- i+5`, inner pentagram.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, &edges).unwrap()
}

/// Rim `0..n` with chords joining antipodal rim vertices.
pub fn mobius_ladder(n: usize) -> Graph {
    assert!(n >= 4 && n.is_multiple_of(2));
    let mut edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    edges.extend((0..n / 2).map(|i| (i, i + n / 2)));
    Graph::from_edges(n, &edges).unwrap()
}

/// Two triangles `{0,1,2}` and `{3,4,5}` joined by `i -- i+3`.
pub fn prism() -> Graph {
    Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// Two vertices joined by four parallel edges: the smallest 4-regular
/// 4-edge-connected frame.
pub fn double_edge_pair() -> MultiGraph {
    MultiGraph::new(2, vec![(0, 1); 4]).unwrap()
}

pub fn k5_frame() -> MultiGraph {
    MultiGraph::from_graph(&k5())
}
