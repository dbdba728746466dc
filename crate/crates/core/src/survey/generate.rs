use std::collections::HashSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{canonical_form, canonical_labeling, Graph, Vertex, VertexSet, MAX_VERTICES};

/// Largest order the built-in generator accepts.
pub const MAX_GENERATED_ORDER: usize = 8;

/// `g` relabeled to `1..=n` in canonical order.
pub fn canonical_graph(g: &Graph) -> Graph {
    let mut position = [0 as Vertex; MAX_VERTICES + 1];
    for (i, v) in canonical_labeling(g).into_iter().enumerate() {
        position[v] = i + 1;
    }
    g.relabel(|v| position[v]).expect("canonical labeling is a permutation")
}

/// One graph per isomorphism class of connected graphs on `n` vertices,
/// canonically labeled and sorted by edge count, then canonical form.
///
/// Classes on `k + 1` vertices come from classes on `k` vertices by adding
/// a vertex joined to a non-empty subset; every connected graph has a
/// vertex whose deletion leaves it connected, so nothing is missed.
pub fn generate_connected_graphs(n: usize) -> Result<Vec<Graph>> {
    if n > MAX_GENERATED_ORDER {
        return Err(Error::SizeBound {
            what: "generator order",
            limit: MAX_GENERATED_ORDER,
            actual: n,
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut level = vec![Graph::empty(VertexSet::range(1))];
    for k in 1..n {
        let candidates: Vec<(Vec<u8>, Graph)> = level
            .par_iter()
            .flat_map_iter(|g| {
                (1u64..1 << k).map(move |mask| {
                    let mut h = g.clone();
                    h.add_vertex(k + 1).expect("label k + 1 is fresh");
                    for u in VertexSet::from_bits(mask) {
                        h.add_edge(u, k + 1).expect("endpoints exist");
                    }
                    (canonical_form(&h), h)
                })
            })
            .collect();
        let mut seen = HashSet::new();
        let mut next: Vec<(Vec<u8>, Graph)> = candidates
            .into_iter()
            .filter(|(key, _)| seen.insert(key.clone()))
            .collect();
        next.sort_by(|a, b| (a.1.edge_count(), &a.0).cmp(&(b.1.edge_count(), &b.0)));
        level = next.into_iter().map(|(_, g)| canonical_graph(&g)).collect();
    }
    Ok(level)
}
