//! The worked poset example, stored as JSON.

use std::collections::BTreeMap;

use bei_core::graph::{Vertex, VertexSet};
use bei_core::poset::RadicalIdealRep;
use serde::Deserialize;

#[derive(Deserialize)]
pub struct NodeSpec {
    pub z: Vec<Vertex>,
    pub cliques: Vec<Vec<Vertex>>,
    pub d: usize,
}

#[derive(Deserialize)]
pub struct Golden {
    pub graph: Vec<(Vertex, Vertex)>,
    pub nodes: BTreeMap<String, NodeSpec>,
    /// `(lower, upper)` cover pairs; `"1"` is the top element.
    pub hasse: Vec<(String, String)>,
}

pub fn golden() -> Golden {
    serde_json::from_str(include_str!("../golden/poset_example.json")).unwrap()
}

pub fn rep(ambient: VertexSet, spec: &NodeSpec) -> RadicalIdealRep {
    let mut edges = Vec::new();
    for c in &spec.cliques {
        for (i, &u) in c.iter().enumerate() {
            for &v in &c[i + 1..] {
                edges.push((u, v));
            }
        }
    }
    RadicalIdealRep::new(ambient, VertexSet::from(spec.z.as_slice()), &edges).unwrap()
}

pub const MINIMAL: [&str; 4] = ["P0", "P1", "P2", "P3"];
