//! Labeled simple graphs on at most 64 vertices.
//!
//! Vertices are positive labels; each vertex's neighborhood is one `u64`.
//! Deleting vertices keeps the surviving labels untouched, so cut sets of
//! derived graphs are reported in the labels of the original.

mod canon;
mod io;
mod vertex_set;

use std::fmt;

pub use canon::{canonical_form, canonical_labeling};
pub use io::{encode_graph6, parse_edge_list, parse_graph6};
pub use vertex_set::{Vertex, VertexSet, MAX_VERTICES};

use crate::error::{Error, Result};
use vertex_set::bit;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    vertices: VertexSet,
    adj: [u64; MAX_VERTICES],
}

/// Connected components of `G \ S`, in order of their smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentPartition {
    pub parts: Vec<VertexSet>,
}

impl ComponentPartition {
    pub fn count(&self) -> usize {
        self.parts.len()
    }

    /// Index of the part containing `v`.
    pub fn part_of(&self, v: Vertex) -> Option<usize> {
        self.parts.iter().position(|p| p.contains(v))
    }
}

impl Default for Graph {
    fn default() -> Self {
        Graph::empty(VertexSet::EMPTY)
    }
}

impl Graph {
    /// Edgeless graph on the given vertex set.
    pub fn empty(vertices: VertexSet) -> Self {
        Graph {
            vertices,
            adj: [0; MAX_VERTICES],
        }
    }

    /// Build from an edge list on vertices `1..=n`; endpoints beyond `n` are added.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::LabelOutOfRange(n));
        }
        let mut g = Graph::empty(VertexSet::range(n));
        for &(u, v) in edges {
            for w in [u, v] {
                if !(1..=MAX_VERTICES).contains(&w) {
                    return Err(Error::LabelOutOfRange(w));
                }
                g.vertices.insert(w);
            }
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let vertices = VertexSet::range(n);
        let mut g = Graph::empty(vertices);
        for v in vertices {
            g.adj[v - 1] = vertices.bits() & !bit(v);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(VertexSet::range(n));
        for v in 1..n {
            g.link(v, v + 1);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        let mut g = Graph::path(n);
        g.link(n, 1);
        g
    }

    pub fn star(leaves: usize) -> Self {
        let mut g = Graph::empty(VertexSet::range(leaves + 1));
        for v in 2..=leaves + 1 {
            g.link(1, v);
        }
        g
    }

    pub fn add_vertex(&mut self, v: Vertex) -> Result<()> {
        if !(1..=MAX_VERTICES).contains(&v) {
            return Err(Error::LabelOutOfRange(v));
        }
        self.vertices.insert(v);
        Ok(())
    }

    /// Adds `{u, v}`; returns whether it was new.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<bool> {
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        for w in [u, v] {
            if !self.vertices.contains(w) {
                return Err(Error::MissingVertex(w));
            }
        }
        let fresh = !self.has_edge(u, v);
        self.link(u, v);
        Ok(fresh)
    }

    fn link(&mut self, u: Vertex, v: Vertex) {
        self.adj[u - 1] |= bit(v);
        self.adj[v - 1] |= bit(u);
    }

    pub fn vertices(&self) -> VertexSet {
        self.vertices
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.vertices
            .iter()
            .map(|v| self.adj[v - 1].count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.contains(v)
    }

    pub fn neighbors(&self, v: Vertex) -> VertexSet {
        if self.vertices.contains(v) {
            VertexSet::from_bits(self.adj[v - 1])
        } else {
            VertexSet::EMPTY
        }
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.neighbors(u).contains(v)
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in self.vertices {
            for v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Vertices reachable from `seed` inside `allowed`.
    pub(crate) fn flood(&self, seed: u64, allowed: u64) -> u64 {
        let mut comp = seed;
        let mut frontier = seed;
        while frontier != 0 {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let i = f.trailing_zeros() as usize;
                next |= self.adj[i];
                f &= f - 1;
            }
            next &= allowed & !comp;
            comp |= next;
            frontier = next;
        }
        comp
    }

    /// Number of connected components of `G \ S` (`c_G(S)`).
    pub fn component_count(&self, removed: VertexSet) -> usize {
        let mut rest = self.vertices.bits() & !removed.bits();
        let allowed = rest;
        let mut count = 0;
        while rest != 0 {
            let seed = rest & rest.wrapping_neg();
            rest &= !self.flood(seed, allowed);
            count += 1;
        }
        count
    }

    /// Connected components of `G \ S`.
    pub fn components_after_removal(&self, removed: VertexSet) -> ComponentPartition {
        let mut rest = self.vertices.bits() & !removed.bits();
        let allowed = rest;
        let mut parts = Vec::new();
        while rest != 0 {
            let seed = rest & rest.wrapping_neg();
            let comp = self.flood(seed, allowed);
            rest &= !comp;
            parts.push(VertexSet::from_bits(comp));
        }
        ComponentPartition { parts }
    }

    pub fn components(&self) -> ComponentPartition {
        self.components_after_removal(VertexSet::EMPTY)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count(VertexSet::EMPTY) <= 1
    }

    pub fn is_clique(&self, set: VertexSet) -> bool {
        set.iter()
            .all(|v| (set - VertexSet::singleton(v)).is_subset(self.neighbors(v)))
    }

    /// Every connected component is a complete graph.
    pub fn components_complete(&self) -> bool {
        self.components().parts.iter().all(|&p| self.is_clique(p))
    }

    pub fn is_complete(&self) -> bool {
        self.is_clique(self.vertices)
    }

    /// `v` is free (simplicial): its neighborhood is a clique.
    pub fn is_free_vertex(&self, v: Vertex) -> bool {
        self.is_clique(self.neighbors(v))
    }

    /// `G_v`: join every pair of neighbors of `v`.
    pub fn complete_neighborhood(&self, v: Vertex) -> Graph {
        let mut g = self.clone();
        let nb = self.neighbors(v);
        for u in nb {
            g.adj[u - 1] |= nb.bits() & !bit(u);
        }
        g
    }

    /// `cone(v, G)`: a fresh vertex `v` joined to every vertex.
    pub fn cone(&self, v: Vertex) -> Result<Graph> {
        if !(1..=MAX_VERTICES).contains(&v) {
            return Err(Error::LabelOutOfRange(v));
        }
        if self.vertices.contains(v) {
            return Err(Error::LabelCollision(v));
        }
        let mut g = self.clone();
        g.vertices.insert(v);
        for u in self.vertices {
            g.link(u, v);
        }
        Ok(g)
    }

    /// Induced subgraph on `V(G) \ S`, labels kept.
    pub fn delete_vertices(&self, removed: VertexSet) -> Result<Graph> {
        if let Some(v) = (removed - self.vertices).first() {
            return Err(Error::MissingVertex(v));
        }
        if !self.vertices.is_empty() && self.vertices.is_subset(removed) {
            return Err(Error::EmptyResult(removed));
        }
        Ok(self.remove(removed))
    }

    /// `G \ S` without the non-empty check.
    pub(crate) fn remove(&self, removed: VertexSet) -> Graph {
        let keep = self.vertices - removed;
        self.induced(keep)
    }

    pub fn induced(&self, keep: VertexSet) -> Graph {
        let keep = keep & self.vertices;
        let mut g = Graph::empty(keep);
        for v in keep {
            g.adj[v - 1] = self.adj[v - 1] & keep.bits();
        }
        g
    }

    /// Union of two graphs on disjoint label sets.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        if let Some(v) = (self.vertices & other.vertices).first() {
            return Err(Error::LabelCollision(v));
        }
        let mut g = self.clone();
        g.vertices |= other.vertices;
        for v in other.vertices {
            g.adj[v - 1] = other.adj[v - 1];
        }
        Ok(g)
    }

    /// Shift every label by `offset`.
    pub fn shifted(&self, offset: usize) -> Result<Graph> {
        let mut g = Graph::empty(VertexSet::EMPTY);
        for v in self.vertices {
            g.add_vertex(v + offset)?;
        }
        for (u, v) in self.edges() {
            g.link(u + offset, v + offset);
        }
        Ok(g)
    }

    /// Apply `map` (indexed by old label) to every label.
    pub fn relabel(&self, map: impl Fn(Vertex) -> Vertex) -> Result<Graph> {
        let mut g = Graph::empty(VertexSet::EMPTY);
        for v in self.vertices {
            let w = map(v);
            if g.vertices.contains(w) {
                return Err(Error::LabelCollision(w));
            }
            g.add_vertex(w)?;
        }
        for (u, v) in self.edges() {
            g.link(map(u), map(v));
        }
        Ok(g)
    }

    /// Relabel to `1..=n` preserving label order.
    pub fn compact(&self) -> Graph {
        let labels = self.vertices.to_vec();
        let mut index = [0usize; MAX_VERTICES + 1];
        for (i, &v) in labels.iter().enumerate() {
            index[v] = i + 1;
        }
        self.relabel(|v| index[v])
            .expect("compaction is injective and stays in range")
    }

    /// Complement on the same vertex set.
    pub fn complement(&self) -> Graph {
        let mut g = self.clone();
        for v in self.vertices {
            g.adj[v - 1] = self.vertices.bits() & !self.adj[v - 1] & !bit(v);
        }
        g
    }

    /// Vertices whose removal increases the component count.
    pub fn cut_vertices(&self) -> VertexSet {
        let base = self.component_count(VertexSet::EMPTY);
        self.vertices
            .iter()
            .filter(|&v| self.component_count(VertexSet::singleton(v)) > base)
            .collect()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(V={}, E=[", self.vertices)?;
        for (i, (u, v)) in self.edges().into_iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        f.write_str("])")
    }
}
