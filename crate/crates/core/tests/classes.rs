mod common;

use std::sync::OnceLock;

use bei_core::classes::{
    blocks, decomposition, hamiltonian_paths, is_bipartite, is_chordal, is_decomposable, is_traceable,
    perfect_elimination_order, traceable_block_bound,
};
use bei_core::cutsets::enumerate_cut_sets;
use bei_core::graph::{Graph, Vertex, VertexSet};
use bei_core::survey::generate_connected_graphs;
use common::*;

/// Connected classes on `1..=8` vertices, generated once.
fn classes() -> &'static [Vec<Graph>] {
    static CLASSES: OnceLock<Vec<Vec<Graph>>> = OnceLock::new();
    CLASSES.get_or_init(|| (0..=8).map(|n| generate_connected_graphs(n).unwrap()).collect())
}

fn up_to(n: usize) -> impl Iterator<Item = &'static Graph> {
    classes()[..=n].iter().flatten()
}

fn subsets(of: VertexSet) -> impl Iterator<Item = VertexSet> {
    let items = of.to_vec();
    (0..1u64 << items.len()).map(move |m| {
        items
            .iter()
            .enumerate()
            .filter(|(i, _)| m >> i & 1 == 1)
            .fold(VertexSet::EMPTY, |s, (_, &v)| s.with(v))
    })
}

/// Some vertex set of size at least four induces a cycle.
fn has_long_induced_cycle(g: &Graph) -> bool {
    subsets(g.vertices()).any(|s| {
        s.len() >= 4 && {
            let h = g.induced(s);
            h.is_connected() && s.iter().all(|v| h.degree(v) == 2)
        }
    })
}

fn extend_path(g: &Graph, path: &mut Vec<Vertex>, left: VertexSet) -> bool {
    if left.is_empty() {
        return true;
    }
    let last = *path.last().unwrap();
    for w in g.neighbors(last) & left {
        path.push(w);
        if extend_path(g, path, left.without(w)) {
            return true;
        }
        path.pop();
    }
    false
}

/// Try every start and every continuation.
fn has_hamiltonian_path(g: &Graph) -> bool {
    g.vertices().is_empty()
        || g.vertices()
            .iter()
            .any(|s| extend_path(g, &mut vec![s], g.vertices().without(s)))
}

fn traceable_oracle(g: &Graph) -> bool {
    g.components()
        .parts
        .iter()
        .all(|&p| has_hamiltonian_path(&g.induced(p)))
}

#[test]
fn chordality_matches_induced_cycles() {
    for g in up_to(8) {
        assert_eq!(is_chordal(g), !has_long_induced_cycle(g), "{g:?}");
    }
}

#[test]
fn elimination_orders_are_perfect() {
    for g in up_to(7) {
        let Some(order) = perfect_elimination_order(g) else {
            continue;
        };
        assert_eq!(order.len(), g.order());
        let mut later = g.vertices();
        for v in order {
            later.remove(v);
            assert!(g.is_clique(g.neighbors(v) & later), "{g:?} at {v}");
        }
    }
}

#[test]
fn traceability_matches_path_search() {
    for g in up_to(8) {
        assert_eq!(is_traceable(g).unwrap(), traceable_oracle(g), "{g:?}");
    }
    let split = graph(&[(1, 2), (2, 3), (4, 5), (6, 7), (6, 8), (6, 9)]);
    assert!(!is_traceable(&split).unwrap());
    assert!(!traceable_oracle(&split));
}

#[test]
fn hamiltonian_certificates_are_paths() {
    for g in up_to(7) {
        let Some(paths) = hamiltonian_paths(g).unwrap() else {
            continue;
        };
        let mut seen = VertexSet::EMPTY;
        for p in paths {
            assert!(p.windows(2).all(|w| g.has_edge(w[0], w[1])), "{g:?}");
            for v in p {
                assert!(!seen.contains(v));
                seen.insert(v);
            }
        }
        assert_eq!(seen, g.vertices());
    }
}

#[test]
fn bipartiteness_matches_two_colourings() {
    for g in up_to(7) {
        let oracle =
            subsets(g.vertices()).any(|side| g.edges().iter().all(|&(u, v)| side.contains(u) != side.contains(v)));
        assert_eq!(is_bipartite(g), oracle, "{g:?}");
    }
}

#[test]
fn block_decompositions_are_sound() {
    for g in up_to(7) {
        let d = blocks(g).unwrap();
        let cut = g.cut_vertices();
        for (u, v) in g.edges() {
            let owners = d.blocks.iter().filter(|b| b.contains(u) && b.contains(v)).count();
            assert_eq!(owners, 1, "{g:?}: edge {u} {v}");
        }
        for i in 0..d.blocks.len() {
            assert!(g.induced(d.blocks[i]).cut_vertices().is_empty() || d.blocks[i].len() == 2);
            for j in i + 1..d.blocks.len() {
                let shared = d.blocks[i] & d.blocks[j];
                assert!(shared.len() <= 1 && shared.is_subset(cut), "{g:?}");
            }
        }
    }
}

#[test]
fn unmixed_graphs_have_tree_block_graphs() {
    for g in up_to(7) {
        if enumerate_cut_sets(g).unwrap().is_unmixed() {
            assert!(blocks(g).unwrap().block_graph_is_tree(), "{g:?}");
        }
    }
}

#[test]
fn traceable_graphs_bound_cut_vertices_per_block() {
    for g in up_to(7).filter(|g| is_traceable(g).unwrap()) {
        assert!(traceable_block_bound(g).unwrap(), "{g:?}");
        if !enumerate_cut_sets(g).unwrap().accessibility().is_accessible() {
            continue;
        }
        for c in blocks(g).unwrap().cut_vertex_map {
            if let [u, v] = c.to_vec()[..] {
                assert!(g.has_edge(u, v), "{g:?}: {u} {v}");
            }
        }
    }
}

#[test]
fn decompositions_split_at_a_free_vertex() {
    for g in up_to(7) {
        let Some(d) = decomposition(g).unwrap() else {
            continue;
        };
        let [a, b] = d.sides;
        assert_eq!(a & b, VertexSet::singleton(d.vertex));
        assert_eq!(a | b, g.vertices());
        assert!(g.induced(a).is_free_vertex(d.vertex));
        assert!(g.induced(b).is_free_vertex(d.vertex));
        assert_eq!(g.induced(a).edge_count() + g.induced(b).edge_count(), g.edge_count());
    }
}

#[test]
fn figure_graphs() {
    assert!(is_chordal(&chordal_nine()));
    assert!(!is_chordal(&traceable_seven()));
    assert!(!is_bipartite(&traceable_seven()));
    assert!(is_traceable(&traceable_seven()).unwrap());
    assert!(traceable_block_bound(&traceable_seven()).unwrap());
    assert!(is_bipartite(&bipartite_h()));

    let g = good_cut_vertex();
    assert!(!is_chordal(&g));
    assert!(!is_traceable(&g).unwrap());
    assert!(!traceable_block_bound(&g).unwrap());
}

#[test]
fn traceable_seven_blocks() {
    let d = blocks(&traceable_seven()).unwrap();
    assert_eq!(d.blocks, family(&[&[1, 2], &[2, 3, 4, 5, 6], &[6, 7]]));
    assert_eq!(d.cut_vertex_map, family(&[&[2], &[2, 6], &[6]]));
    assert!(d.block_graph_is_tree());
}

#[test]
fn small_block_shapes() {
    let p3 = blocks(&Graph::path(3)).unwrap();
    assert_eq!(p3.blocks, family(&[&[1, 2], &[2, 3]]));
    assert_eq!(p3.block_graph.edges(), vec![(1, 2)]);
    assert_eq!(blocks(&Graph::complete(5)).unwrap().blocks.len(), 1);
    assert!(blocks(&Graph::path(6)).unwrap().block_graph_is_tree());

    let star = blocks(&Graph::star(3)).unwrap();
    assert_eq!(star.blocks.len(), 3);
    assert!(!star.block_graph_is_tree());
    assert!(blocks(&graph(&[(1, 2), (3, 4)])).is_err());
}

#[test]
fn decomposable_examples() {
    assert_eq!(decomposition(&Graph::path(3)).unwrap().map(|d| d.vertex), Some(2));
    assert!(!is_decomposable(&Graph::complete(4)).unwrap());
    let bowtie = graph(&[(1, 2), (3, 4)]).cone(5).unwrap();
    assert_eq!(decomposition(&bowtie).unwrap().map(|d| d.vertex), Some(5));
}

#[test]
fn trees_are_chordal() {
    for g in up_to(8).filter(|g| g.edge_count() + 1 == g.order()) {
        assert!(is_chordal(g));
    }
}
