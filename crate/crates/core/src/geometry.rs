//! Minimal primes of `J_G` by height, the dual graph, and the Hirsch bound.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::cutsets::{enumerate_cut_sets, CutSetFamily};
use crate::error::Result;
use crate::graph::{Graph, VertexSet};
use crate::poset::RadicalIdealRep;

/// `P_S(G)` with its height `n - c(S) + |S|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalPrime {
    pub cut_set: VertexSet,
    pub completed_components: Vec<VertexSet>,
    pub height: usize,
}

pub fn minimal_primes(g: &Graph) -> Result<Vec<MinimalPrime>> {
    Ok(primes_of(g, &enumerate_cut_sets(g)?))
}

fn primes_of(g: &Graph, family: &CutSetFamily) -> Vec<MinimalPrime> {
    let n = g.order();
    family
        .entries()
        .iter()
        .map(|e| MinimalPrime {
            cut_set: e.set,
            completed_components: g.components_after_removal(e.set).parts,
            height: n + e.set.len() - e.components,
        })
        .collect()
}

/// `ht(J_G)`, the least prime height; zero for the empty graph.
pub fn ideal_height(g: &Graph) -> Result<usize> {
    Ok(minimal_primes(g)?.iter().map(|p| p.height).min().unwrap_or(0))
}

/// Cut sets as nodes; `S ~ T` when both primes have minimum height `h` and
/// `P_S + P_T` has height `h + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    nodes: Vec<VertexSet>,
    heights: Vec<usize>,
    edges: Vec<(usize, usize)>,
    height: usize,
}

impl DualGraph {
    pub fn nodes(&self) -> &[VertexSet] {
        &self.nodes
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// `ht(J_G)`.
    pub fn height(&self) -> usize {
        self.height
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Longest shortest path, or `None` when disconnected.
    pub fn diameter(&self) -> Option<usize> {
        let adj = self.adjacency();
        let mut diameter = 0;
        for start in 0..self.nodes.len() {
            let mut dist = vec![usize::MAX; self.nodes.len()];
            dist[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &v in &adj[u] {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
            diameter = diameter.max(*dist.iter().max()?);
            if dist.contains(&usize::MAX) {
                return None;
            }
        }
        Some(diameter)
    }

    pub fn is_connected(&self) -> bool {
        self.diameter().is_some()
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph dual {\n");
        for (i, (set, h)) in self.nodes.iter().zip(&self.heights).enumerate() {
            let _ = writeln!(s, "  s{i} [label=\"{set}\\nht={h}\"];");
        }
        for (a, b) in &self.edges {
            let _ = writeln!(s, "  s{a} -- s{b};");
        }
        s.push_str("}\n");
        s
    }
}

impl Serialize for DualGraph {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let adj = self.adjacency();
        let adjacency: BTreeMap<String, Vec<String>> = self
            .nodes
            .iter()
            .zip(&adj)
            .map(|(s, nbrs)| (s.to_string(), nbrs.iter().map(|&j| self.nodes[j].to_string()).collect()))
            .collect();
        let mut st = serializer.serialize_struct("DualGraph", 3)?;
        st.serialize_field("height", &self.height)?;
        st.serialize_field("diameter", &self.diameter())?;
        st.serialize_field("adjacency", &adjacency)?;
        st.end()
    }
}

/// Height of a radical ideal: the least height among its minimal primes.
fn rep_height(r: &RadicalIdealRep) -> Result<usize> {
    Ok(r.minimal_primes()?
        .iter()
        .map(RadicalIdealRep::height)
        .min()
        .unwrap_or(0))
}

pub fn dual_graph(g: &Graph) -> Result<DualGraph> {
    let family = enumerate_cut_sets(g)?;
    let primes = primes_of(g, &family);
    let height = primes.iter().map(|p| p.height).min().unwrap_or(0);
    let reps: Vec<RadicalIdealRep> = family
        .sets()
        .map(|s| RadicalIdealRep::prime_of_cut_set(g, s))
        .collect::<Result<_>>()?;
    let eligible: Vec<usize> = (0..primes.len()).filter(|&i| primes[i].height == height).collect();
    let pairs: Vec<(usize, usize)> = eligible
        .iter()
        .enumerate()
        .flat_map(|(k, &a)| eligible[k + 1..].iter().map(move |&b| (a, b)))
        .collect();
    let mut edges = pairs
        .into_par_iter()
        .map(|(a, b)| Ok(rep_height(&reps[a].sum(&reps[b]))? == height + 1).map(|e| e.then_some((a, b))))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect::<Vec<_>>();
    edges.sort_unstable();
    Ok(DualGraph {
        nodes: family.to_vec(),
        heights: primes.iter().map(|p| p.height).collect(),
        edges,
        height,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HirschReport {
    pub hirsch: bool,
    /// `None` when the dual graph is disconnected.
    pub diameter: Option<usize>,
    pub height: usize,
}

/// Whether `diam D(J_G) <= ht(J_G)`.
pub fn hirsch_check(g: &Graph) -> Result<HirschReport> {
    Ok(hirsch_of(&dual_graph(g)?))
}

pub fn hirsch_of(dual: &DualGraph) -> HirschReport {
    let diameter = dual.diameter();
    HirschReport {
        hirsch: diameter.is_some_and(|d| d <= dual.height),
        diameter,
        height: dual.height,
    }
}
