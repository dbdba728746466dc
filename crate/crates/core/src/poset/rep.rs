use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::cutsets::{enumerate_cut_sets, is_cut_set};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

/// The ideal `(x_i, y_i : i ∈ Z) + J_H` with `H` a graph on `V \ Z`.
///
/// `H` always carries every vertex of `V \ Z`, so two reps are equal exactly
/// when their `Z` and edge sets agree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RadicalIdealRep {
    ambient: VertexSet,
    z: VertexSet,
    h: Graph,
}

fn union_of_cliques(ambient: VertexSet, parts: &[VertexSet]) -> Graph {
    let mut h = Graph::empty(ambient);
    for &p in parts {
        for u in p {
            for v in p {
                if u < v {
                    h.add_edge(u, v).expect("clique vertices lie in the ambient set");
                }
            }
        }
    }
    h
}

impl RadicalIdealRep {
    /// Rep from explicit parts; `h` is restricted to `ambient \ z`.
    pub fn new(ambient: VertexSet, z: VertexSet, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        if let Some(v) = (z - ambient).first() {
            return Err(Error::MissingVertex(v));
        }
        let mut h = Graph::empty(ambient - z);
        for &(u, v) in edges {
            h.add_edge(u, v)?;
        }
        Ok(RadicalIdealRep { ambient, z, h })
    }

    /// `P_S(G)`: the variables of `S` plus complete graphs on the components of `G \ S`.
    pub fn prime_of_cut_set(g: &Graph, s: VertexSet) -> Result<Self> {
        if !s.is_subset(g.vertices()) || !is_cut_set(g, s) {
            return Err(Error::NotACutSet(s));
        }
        Ok(Self::completed(g.vertices(), s, &g.components_after_removal(s).parts))
    }

    fn completed(ambient: VertexSet, z: VertexSet, parts: &[VertexSet]) -> Self {
        RadicalIdealRep {
            ambient,
            z,
            h: union_of_cliques(ambient - z, parts),
        }
    }

    pub fn ambient(&self) -> VertexSet {
        self.ambient
    }

    pub fn z(&self) -> VertexSet {
        self.z
    }

    pub fn h(&self) -> &Graph {
        &self.h
    }

    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        self.h.edges()
    }

    /// Components of `H` with at least two vertices; singletons carry no generators.
    pub fn cliques(&self) -> Vec<VertexSet> {
        self.h.components().parts.into_iter().filter(|p| p.len() > 1).collect()
    }

    /// Ideal sum: union the variable sets, then union the edges off `Z`.
    pub fn sum(&self, other: &Self) -> Self {
        debug_assert_eq!(self.ambient, other.ambient);
        let z = self.z | other.z;
        let mut h = self.h.induced(self.ambient - z);
        for (u, v) in other.h.edges() {
            if !z.contains(u) && !z.contains(v) {
                h.add_edge(u, v).expect("endpoints lie off Z");
            }
        }
        RadicalIdealRep {
            ambient: self.ambient,
            z,
            h,
        }
    }

    /// Prime iff every component of `H` is complete.
    pub fn is_prime(&self) -> bool {
        self.h.components_complete()
    }

    /// One prime per cut set `U` of `H`: `(Z ∪ U, completed components of H \ U)`.
    pub fn minimal_primes(&self) -> Result<Vec<Self>> {
        if self.is_prime() {
            return Ok(vec![self.clone()]);
        }
        let family = enumerate_cut_sets(&self.h)?;
        Ok(family
            .sets()
            .map(|u| Self::completed(self.ambient, self.z | u, &self.h.components_after_removal(u).parts))
            .collect())
    }

    /// Whether `other ⊆ self` as ideals.
    ///
    /// Every generator of `other` must lie in `self`: `x_i` needs `i ∈ Z`,
    /// and `f_ij` needs an endpoint in `Z` or `{i, j}` an edge of `H`.
    pub fn contains(&self, other: &Self) -> bool {
        other.z.is_subset(self.z)
            && other
                .h
                .edges()
                .into_iter()
                .all(|(i, j)| self.z.contains(i) || self.z.contains(j) || self.h.has_edge(i, j))
    }

    /// `dim R/I = n - |Z| + c(H)`, singletons of `H` counted.
    pub fn dim(&self) -> usize {
        self.ambient.len() - self.z.len() + self.h.component_count(VertexSet::EMPTY)
    }

    /// `2n - dim`, meaningful for primes.
    pub fn height(&self) -> usize {
        2 * self.ambient.len() - self.dim()
    }

    /// Sort key: `Z` first, then the edge list.
    pub(crate) fn key(&self) -> (VertexSet, Vec<(Vertex, Vertex)>) {
        (self.z, self.h.edges())
    }
}

impl fmt::Display for RadicalIdealRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z={}", self.z)?;
        if self.is_prime() {
            f.write_str(" H=[")?;
            for (i, c) in self.cliques().iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{c}")?;
            }
        } else {
            f.write_str(" E=[")?;
            for (i, (u, v)) in self.edges().into_iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{u}-{v}")?;
            }
        }
        f.write_str("]")
    }
}

impl fmt::Debug for RadicalIdealRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for RadicalIdealRep {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("RadicalIdealRep", 4)?;
        s.serialize_field("z", &self.z)?;
        s.serialize_field("components", &self.cliques())?;
        s.serialize_field("edges", &self.edges())?;
        s.serialize_field("d", &self.dim())?;
        s.end()
    }
}
