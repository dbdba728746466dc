#![allow(dead_code)]

pub mod golden;
pub mod lemmas;

use bei_core::graph::{Graph, Vertex, VertexSet};

pub fn graph(edges: &[(Vertex, Vertex)]) -> Graph {
    Graph::from_edges(0, edges).expect("fixture edges are valid")
}

pub fn family(sets: &[&[Vertex]]) -> Vec<VertexSet> {
    let mut out: Vec<VertexSet> = sets.iter().map(|s| VertexSet::from(*s)).collect();
    out.sort();
    out
}

/// Eleven vertices, accessible.
#[rustfmt::skip]
pub fn accessible_eleven() -> Graph {
    graph(&[
        (1, 2), (2, 3), (3, 5), (5, 6), (6, 7), (7, 8), (8, 5), (5, 9),
        (9, 10), (10, 11), (7, 5), (5, 10), (10, 4), (4, 9), (3, 4), (2, 10),
    ])
}

/// Seven vertices, unmixed but not accessible; bipartite.
pub fn bipartite_h() -> Graph {
    graph(&[(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 5), (3, 6)])
}

/// Passes the three structural conditions but is not accessible.
#[rustfmt::skip]
pub fn structural_but_stuck() -> Graph {
    graph(&[
        (5, 8), (8, 2), (2, 9), (9, 1), (1, 6), (6, 2), (1, 8), (8, 9), (9, 6),
        (6, 8), (8, 3), (3, 9), (9, 7), (7, 4), (6, 7), (7, 8), (3, 7),
    ])
}

/// Unmixed, not Cohen-Macaulay.
pub fn rinaldo() -> Graph {
    graph(&[
        (1, 2),
        (2, 3),
        (3, 6),
        (6, 8),
        (2, 5),
        (5, 4),
        (4, 3),
        (5, 7),
        (7, 9),
        (6, 7),
    ])
}

pub fn square_whisker() -> Graph {
    graph(&[(1, 2), (2, 3), (3, 4), (4, 5), (5, 2)])
}

pub fn cut_vertex_cut_sets() -> Graph {
    graph(&[(1, 2), (2, 3), (3, 4), (4, 6), (6, 7), (6, 8), (2, 5), (5, 4)])
}

/// Nine vertices; deleting 2 or 8 keeps unmixedness, deleting 7 does not.
#[rustfmt::skip]
pub fn good_cut_vertex() -> Graph {
    graph(&[
        (1, 2), (2, 3), (3, 5), (5, 4), (4, 2), (2, 8),
        (8, 7), (7, 4), (6, 7), (3, 8), (8, 9), (5, 8),
    ])
}

/// Seven vertices, eleven edges, strongly unmixed.
#[rustfmt::skip]
pub fn strongly_unmixed_h() -> Graph {
    graph(&[
        (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7),
        (5, 2), (2, 4), (4, 6), (6, 3), (2, 6),
    ])
}

/// Path `1..=n` with a clique on `{n, ..., n+k-1}`.
pub fn path_clique(n: usize, k: usize) -> Graph {
    let mut g = Graph::path(n);
    for v in n + 1..n + k {
        g.add_vertex(v).unwrap();
    }
    for u in n..n + k {
        for v in u + 1..n + k {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

pub fn traceable_seven() -> Graph {
    graph(&[(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 6), (6, 4)])
}

/// Five vertices, the worked poset example.
pub fn poset_example() -> Graph {
    graph(&[(1, 2), (2, 3), (2, 4), (3, 4), (4, 5)])
}

#[rustfmt::skip]
pub fn chordal_nine() -> Graph {
    graph(&[
        (1, 2), (2, 3), (3, 4), (4, 5), (2, 5), (2, 8), (7, 8),
        (4, 7), (2, 4), (4, 8), (5, 6), (5, 7), (5, 8), (8, 9),
    ])
}

#[rustfmt::skip]
pub fn appendix_seven() -> Graph {
    graph(&[(7, 6), (6, 5), (5, 3), (3, 6), (6, 4), (4, 3), (3, 1), (1, 4), (4, 2), (2, 3)])
}
