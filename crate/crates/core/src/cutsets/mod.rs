//! Cut sets, unmixedness and accessibility.

mod strong;

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{encode_graph6, Graph, Vertex, VertexSet};

pub use strong::{is_strongly_unmixed, is_strongly_unmixed_with, StrongUnmixednessTrace, SuMemo, TraceKind, TraceNode};

/// Largest vertex count accepted by [`enumerate_cut_sets`].
pub const MAX_ENUMERATION_VERTICES: usize = 24;

/// One member of `C(G)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CutSetEntry {
    pub set: VertexSet,
    /// `c_G(S)`.
    pub components: usize,
    /// Whether `S` contains a cut vertex of `G`.
    pub has_cut_vertex: bool,
}

/// The family `C(G)`, sorted by size and then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutSetFamily {
    entries: Vec<CutSetEntry>,
    base_components: usize,
    cut_vertices: VertexSet,
    fingerprint: String,
}

/// A cut set whose component count breaks `c(S) = |S| + c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct UnmixedViolation {
    pub set: VertexSet,
    pub components: usize,
    pub expected: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Accessibility {
    Accessible,
    Mixed(UnmixedViolation),
    /// Unmixed, but some non-empty cut sets lose cut-set status on every
    /// single-element removal. `least` is the first of them in family order.
    Stuck {
        least: VertexSet,
        stuck: Vec<VertexSet>,
    },
}

impl Accessibility {
    pub fn is_accessible(&self) -> bool {
        matches!(self, Accessibility::Accessible)
    }
}

/// An ordering of a cut set with every prefix a cut set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AccessibleOrdering {
    pub order: Vec<Vertex>,
    /// Each prefix has exactly one more component than the previous one.
    pub unit_steps: bool,
}

/// Outcome of the search for a cut vertex whose deletion stays unmixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum GoodCutVertex {
    Found { vertex: Vertex },
    NoneUnmixed { candidates: VertexSet },
    NoCutVertex,
}

/// The three quick structural checks that every accessible graph passes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralConditions {
    /// Every non-empty cut set contains a cut vertex.
    pub cut_sets_meet_cut_vertices: bool,
    /// The cut vertices induce a connected subgraph.
    pub cut_vertices_connected: bool,
    /// Every vertex is a cut vertex or adjacent to one.
    pub cut_vertices_dominate: bool,
    /// First non-empty cut set without a cut vertex.
    pub witness: Option<VertexSet>,
}

impl StructuralConditions {
    pub fn all(&self) -> bool {
        self.cut_sets_meet_cut_vertices && self.cut_vertices_connected && self.cut_vertices_dominate
    }
}

/// `S = ∅`, or removing any single element of `S` lowers the component count.
pub fn is_cut_set(g: &Graph, s: VertexSet) -> bool {
    let c = g.component_count(s);
    s.iter().all(|v| g.component_count(s.without(v)) < c)
}

/// Every cut set of `g`, by a scan over all vertex subsets.
pub fn enumerate_cut_sets(g: &Graph) -> Result<CutSetFamily> {
    let n = g.order();
    if n > MAX_ENUMERATION_VERTICES {
        return Err(Error::SizeBound {
            what: "cut-set enumeration vertices",
            limit: MAX_ENUMERATION_VERTICES,
            actual: n,
        });
    }
    let labels = g.vertices().to_vec();
    let expand = |mask: usize| -> VertexSet {
        let mut set = VertexSet::EMPTY;
        let mut m = mask;
        while m != 0 {
            set.insert(labels[m.trailing_zeros() as usize]);
            m &= m - 1;
        }
        set
    };

    let mut counts = vec![0u8; 1 << n];
    counts
        .par_iter_mut()
        .enumerate()
        .for_each(|(mask, c)| *c = g.component_count(expand(mask)) as u8);

    let cut_vertices = g.cut_vertices();
    let mut entries: Vec<CutSetEntry> = (0..1usize << n)
        .into_par_iter()
        .filter(|&mask| {
            let c = counts[mask];
            let mut m = mask;
            while m != 0 {
                let low = m & m.wrapping_neg();
                if counts[mask ^ low] >= c {
                    return false;
                }
                m ^= low;
            }
            true
        })
        .map(|mask| {
            let set = expand(mask);
            CutSetEntry {
                set,
                components: counts[mask] as usize,
                has_cut_vertex: !set.is_disjoint(cut_vertices),
            }
        })
        .collect();
    entries.sort_by_key(|e| e.set);

    Ok(CutSetFamily {
        entries,
        base_components: counts[0] as usize,
        cut_vertices,
        fingerprint: encode_graph6(g),
    })
}

impl CutSetFamily {
    pub fn entries(&self) -> &[CutSetEntry] {
        &self.entries
    }

    pub fn sets(&self) -> impl Iterator<Item = VertexSet> + '_ {
        self.entries.iter().map(|e| e.set)
    }

    pub fn to_vec(&self) -> Vec<VertexSet> {
        self.sets().collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, s: VertexSet) -> bool {
        self.entries.binary_search_by(|e| e.set.cmp(&s)).is_ok()
    }

    pub fn get(&self, s: VertexSet) -> Option<&CutSetEntry> {
        self.entries
            .binary_search_by(|e| e.set.cmp(&s))
            .ok()
            .map(|i| &self.entries[i])
    }

    /// `c = c_G(∅)`.
    pub fn base_components(&self) -> usize {
        self.base_components
    }

    pub fn cut_vertices(&self) -> VertexSet {
        self.cut_vertices
    }

    /// graph6 of the graph the family was computed from.
    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }

    /// First cut set (in family order) with `c(S) ≠ |S| + c`.
    pub fn unmixed_violation(&self) -> Option<UnmixedViolation> {
        self.entries.iter().find_map(|e| {
            let expected = e.set.len() + self.base_components;
            (e.components != expected).then_some(UnmixedViolation {
                set: e.set,
                components: e.components,
                expected,
            })
        })
    }

    pub fn is_unmixed(&self) -> bool {
        self.unmixed_violation().is_none()
    }

    /// Non-empty cut sets `S` with no `s` such that `S \ {s}` is a cut set.
    pub fn stuck_sets(&self) -> Vec<VertexSet> {
        self.sets()
            .filter(|s| !s.is_empty() && s.iter().all(|v| !self.contains(s.without(v))))
            .collect()
    }

    /// Whether the family is an accessible set system (unmixedness not checked).
    pub fn is_accessible_system(&self) -> bool {
        self.stuck_sets().is_empty()
    }

    pub fn accessibility(&self) -> Accessibility {
        if let Some(v) = self.unmixed_violation() {
            return Accessibility::Mixed(v);
        }
        let stuck = self.stuck_sets();
        match stuck.first() {
            None => Accessibility::Accessible,
            Some(&least) => Accessibility::Stuck { least, stuck },
        }
    }
}

impl Serialize for CutSetFamily {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.sets())
    }
}

pub fn cut_vertices(g: &Graph) -> VertexSet {
    g.cut_vertices()
}

pub fn is_unmixed(g: &Graph) -> Result<bool> {
    Ok(enumerate_cut_sets(g)?.is_unmixed())
}

pub fn is_accessible(g: &Graph) -> Result<Accessibility> {
    Ok(enumerate_cut_sets(g)?.accessibility())
}

/// Order the elements of cut set `s` so that every prefix is a cut set.
pub fn accessible_ordering(g: &Graph, s: VertexSet) -> Result<Option<AccessibleOrdering>> {
    if !s.is_subset(g.vertices()) || !is_cut_set(g, s) {
        return Err(Error::NotACutSet(s));
    }
    let mut dead = HashSet::new();
    let mut order = Vec::with_capacity(s.len());
    if !extend_ordering(g, s, VertexSet::EMPTY, &mut order, &mut dead) {
        return Ok(None);
    }
    let mut prefix = VertexSet::EMPTY;
    let mut unit_steps = true;
    for &v in &order {
        let before = g.component_count(prefix);
        prefix.insert(v);
        unit_steps &= g.component_count(prefix) == before + 1;
    }
    Ok(Some(AccessibleOrdering { order, unit_steps }))
}

fn extend_ordering(
    g: &Graph,
    target: VertexSet,
    prefix: VertexSet,
    order: &mut Vec<Vertex>,
    dead: &mut HashSet<VertexSet>,
) -> bool {
    if prefix == target {
        return true;
    }
    if dead.contains(&prefix) {
        return false;
    }
    for v in target - prefix {
        let next = prefix.with(v);
        if is_cut_set(g, next) {
            order.push(v);
            if extend_ordering(g, target, next, order, dead) {
                return true;
            }
            order.pop();
        }
    }
    dead.insert(prefix);
    false
}

/// Number of components of `G \ S` that `N(v)` meets.
pub fn reconnect_count(g: &Graph, s: VertexSet, v: Vertex) -> usize {
    let nb = g.neighbors(v);
    g.components_after_removal(s)
        .parts
        .iter()
        .filter(|p| !p.is_disjoint(nb))
        .count()
}

/// A cut vertex `v` (smallest label first) with `G \ {v}` unmixed.
pub fn find_unmixed_cut_vertex(g: &Graph) -> Result<GoodCutVertex> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let candidates = g.cut_vertices();
    if candidates.is_empty() {
        return Ok(GoodCutVertex::NoCutVertex);
    }
    for v in candidates {
        if is_unmixed(&g.remove(VertexSet::singleton(v)))? {
            return Ok(GoodCutVertex::Found { vertex: v });
        }
    }
    Ok(GoodCutVertex::NoneUnmixed { candidates })
}

/// The structural checks; the last two hold vacuously when there is no cut vertex.
pub fn structural_necessary_conditions(g: &Graph) -> Result<StructuralConditions> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let family = enumerate_cut_sets(g)?;
    Ok(structural_conditions_of(g, &family))
}

pub(crate) fn structural_conditions_of(g: &Graph, family: &CutSetFamily) -> StructuralConditions {
    let cut = family.cut_vertices();
    let witness = family
        .entries()
        .iter()
        .find(|e| !e.set.is_empty() && !e.has_cut_vertex)
        .map(|e| e.set);
    let (connected, dominate) = if cut.is_empty() {
        (true, true)
    } else {
        let reach = cut.iter().fold(cut, |acc, v| acc | g.neighbors(v));
        (g.induced(cut).is_connected(), reach == g.vertices())
    };
    StructuralConditions {
        cut_sets_meet_cut_vertices: witness.is_none(),
        cut_vertices_connected: connected,
        cut_vertices_dominate: dominate,
        witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sets(family: &CutSetFamily) -> Vec<String> {
        family.sets().map(|s| s.to_string()).collect()
    }

    #[test]
    fn complete_graph_has_only_empty_cut_set() {
        let f = enumerate_cut_sets(&Graph::complete(5)).unwrap();
        assert_eq!(sets(&f), ["{}"]);
        assert!(f.is_unmixed());
    }

    #[test]
    fn path_cut_sets() {
        let f = enumerate_cut_sets(&Graph::path(4)).unwrap();
        assert_eq!(sets(&f), ["{}", "{2}", "{3}"]);
        assert_eq!(f.accessibility(), Accessibility::Accessible);
    }

    #[test]
    fn four_cycle_is_mixed() {
        let f = enumerate_cut_sets(&Graph::cycle(4)).unwrap();
        assert_eq!(sets(&f), ["{}", "{1,3}", "{2,4}"]);
        let v = f.unmixed_violation().unwrap();
        assert_eq!((v.set, v.components, v.expected), (VertexSet::from([1, 3]), 2, 3));
        assert_eq!(f.stuck_sets().len(), 2);
    }

    #[test]
    fn star_is_mixed() {
        let f = enumerate_cut_sets(&Graph::star(3)).unwrap();
        let v = f.unmixed_violation().unwrap();
        assert_eq!(v.set, VertexSet::from([1]));
        assert_eq!((v.components, v.expected), (3, 2));
    }

    #[test]
    fn ordering_of_path_cut_set() {
        let p = Graph::path(5);
        let o = accessible_ordering(&p, VertexSet::from([2, 4])).unwrap().unwrap();
        assert_eq!(o.order, vec![2, 4]);
        assert!(o.unit_steps);
        assert!(accessible_ordering(&p, VertexSet::from([2, 3])).is_err());
    }

    #[test]
    fn reconnect_on_path() {
        assert_eq!(reconnect_count(&Graph::path(3), VertexSet::from([2]), 2), 2);
    }

    #[test]
    fn enumeration_bound() {
        let big = Graph::path(25);
        assert!(enumerate_cut_sets(&big).unwrap_err().is_resource_bound());
    }

    #[test]
    fn cut_set_family_serializes_sorted() {
        let f = enumerate_cut_sets(&Graph::path(4)).unwrap();
        assert_eq!(serde_json::to_string(&f).unwrap(), "[[],[2],[3]]");
    }

    #[test]
    fn k2_structural_vacuous() {
        let s = structural_necessary_conditions(&Graph::complete(2)).unwrap();
        assert!(s.all());
    }
}
