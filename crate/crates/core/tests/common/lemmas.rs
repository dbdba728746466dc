//! Cut-set lemmas as checkable predicates; each returns a description of
//! the first violation.

use std::collections::BTreeSet;

use bei_core::cutsets::{
    accessible_ordering, enumerate_cut_sets, is_cut_set, is_strongly_unmixed, reconnect_count, CutSetFamily,
};
use bei_core::graph::{Graph, Vertex, VertexSet};
use bei_core::linalg::Field;
use bei_core::poset::cm_certificate;

pub type Check = Result<(), String>;

fn family(g: &Graph) -> CutSetFamily {
    enumerate_cut_sets(g).expect("test graphs are small")
}

fn sets(f: &CutSetFamily) -> BTreeSet<VertexSet> {
    f.sets().collect()
}

fn accessible(f: &CutSetFamily) -> bool {
    f.accessibility().is_accessible()
}

/// `C(G_v)` is the set of cut sets of `G` avoiding `v`; unmixedness and
/// accessibility pass from `G` to `G_v`.
pub fn completion(g: &Graph) -> Check {
    let f = family(g);
    for v in g.vertices() {
        let fv = family(&g.complete_neighborhood(v));
        let expected: BTreeSet<VertexSet> = f.sets().filter(|s| !s.contains(v)).collect();
        if sets(&fv) != expected {
            return Err(format!("C(G_{v}) differs"));
        }
        if f.is_unmixed() && !fv.is_unmixed() {
            return Err(format!("G_{v} lost unmixedness"));
        }
        if accessible(&f) && !accessible(&fv) {
            return Err(format!("G_{v} lost accessibility"));
        }
    }
    Ok(())
}

/// The cone over two connected graphs, `h2` labelled disjointly from `h1`.
pub fn cone(h1: &Graph, h2: &Graph, apex: Vertex, with_cm: bool) -> Check {
    let g = h1.disjoint_union(h2).unwrap().cone(apex).unwrap();
    let (f1, f2, f) = (family(h1), family(h2), family(&g));
    let mut expected: BTreeSet<VertexSet> = BTreeSet::from([VertexSet::EMPTY]);
    for t1 in f1.sets() {
        for t2 in f2.sets() {
            expected.insert((t1 | t2).with(apex));
        }
    }
    if sets(&f) != expected {
        return Err("cone cut sets".into());
    }
    if (f1.is_unmixed() && f2.is_unmixed()) != f.is_unmixed() {
        return Err("cone unmixedness".into());
    }
    if (accessible(&f1) && accessible(&f2)) != accessible(&f) {
        return Err("cone accessibility".into());
    }
    if with_cm {
        let cm = |x: &Graph| cm_certificate(x, &[Field::Rationals]).unwrap().all_cm();
        if (cm(h1) && cm(h2)) != cm(&g) {
            return Err("cone Cohen-Macaulayness".into());
        }
    }
    Ok(())
}

/// Under unmixedness, `S \ {s}` is a cut set iff `s` meets exactly two
/// components of `G \ S`.
pub fn reconnection(g: &Graph) -> Check {
    let f = family(g);
    if !f.is_unmixed() {
        return Ok(());
    }
    for s in f.sets() {
        for v in s {
            if f.contains(s.without(v)) != (reconnect_count(g, s, v) == 2) {
                return Err(format!("reconnection at {s} / {v}"));
            }
        }
    }
    Ok(())
}

/// For a cut vertex `v` of a connected unmixed graph, with `H = G \ {v}`:
/// `J_H` unmixed, no cut set of `H` swallowing either side's neighbors of
/// `v`, and `C(H) = {S : S ∪ {v} ∈ C(G)}` are equivalent.
pub fn deletion_equivalences(g: &Graph) -> Check {
    let f = family(g);
    if !g.is_connected() || !f.is_unmixed() {
        return Ok(());
    }
    for v in g.cut_vertices() {
        let h = g.delete_vertices(VertexSet::singleton(v)).unwrap();
        let fh = family(&h);
        let parts = h.components().parts;
        if parts.len() != 2 {
            return Err(format!(
                "cut vertex {v} of an unmixed graph leaves {} parts",
                parts.len()
            ));
        }
        let nb = g.neighbors(v);
        let one = fh.is_unmixed();
        let two = fh.sets().all(|s| parts.iter().all(|&p| !(nb & p).is_subset(s)));
        let rest = h.vertices();
        let lifted: BTreeSet<VertexSet> = (0..1u64 << rest.len())
            .map(|m| subset(rest, m))
            .filter(|s| is_cut_set(g, s.with(v)))
            .collect();
        let three = sets(&fh) == lifted;
        if one != two || two != three {
            return Err(format!("at {v}: ({one}, {two}, {three})"));
        }
    }
    Ok(())
}

fn subset(of: VertexSet, mask: u64) -> VertexSet {
    of.iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .fold(VertexSet::EMPTY, |acc, (_, v)| acc.with(v))
}

/// `C(G_v \ {v}) = C(G_v)` minus the sets containing `N_G(v)`, when `G` and
/// `G \ {v}` are unmixed and `G` is connected.
pub fn completed_deletion(g: &Graph) -> Check {
    let f = family(g);
    if !g.is_connected() || !f.is_unmixed() {
        return Ok(());
    }
    for v in g.cut_vertices() {
        let single = VertexSet::singleton(v);
        if !family(&g.delete_vertices(single).unwrap()).is_unmixed() {
            continue;
        }
        let gv = g.complete_neighborhood(v);
        let fgv = family(&gv);
        let nb = g.neighbors(v);
        let expected: BTreeSet<VertexSet> = fgv.sets().filter(|s| !nb.is_subset(*s)).collect();
        let actual = family(&gv.delete_vertices(single).unwrap());
        if sets(&actual) != expected || !actual.is_unmixed() {
            return Err(format!("G_{v} \\ {{{v}}}"));
        }
    }
    Ok(())
}

/// Under unmixedness, subsets of a cut set made of cut vertices are cut sets.
pub fn cut_vertex_subsets(g: &Graph) -> Check {
    let f = family(g);
    if !f.is_unmixed() {
        return Ok(());
    }
    let cut = f.cut_vertices();
    for s in f.sets().filter(|s| s.is_subset(cut)) {
        for m in 0..1u64 << s.len() {
            let t = subset(s, m);
            if !f.contains(t) {
                return Err(format!("{t} ⊂ {s}"));
            }
        }
    }
    Ok(())
}

/// Every cut set of an accessible graph has an ordering whose prefixes are
/// all cut sets.
pub fn prefix_orderings(g: &Graph) -> Check {
    let f = family(g);
    if !accessible(&f) {
        return Ok(());
    }
    for s in f.sets() {
        let Some(o) = accessible_ordering(g, s).unwrap() else {
            return Err(format!("no ordering of {s}"));
        };
        let mut prefix = VertexSet::EMPTY;
        for &v in &o.order {
            prefix = prefix.with(v);
            if !f.contains(prefix) {
                return Err(format!("prefix {prefix} of {s}"));
            }
        }
        if prefix != s {
            return Err(format!("ordering of {s} is incomplete"));
        }
    }
    Ok(())
}

/// In an accessible graph, a cut set with a non-cut vertex can lose one
/// of its non-cut vertices and remain a cut set.
pub fn non_cut_vertex_removal(g: &Graph) -> Check {
    let f = family(g);
    if !accessible(&f) {
        return Ok(());
    }
    let cut = f.cut_vertices();
    for s in f.sets() {
        let free = s - cut;
        if !free.is_empty() && !free.iter().any(|w| f.contains(s.without(w))) {
            return Err(format!("no non-cut vertex of {s} is removable"));
        }
    }
    Ok(())
}

/// Cut sets of a disconnected graph are the unions of per-component cut
/// sets, and unmixedness and accessibility are decided per component.
pub fn component_split(g: &Graph) -> Check {
    let parts = g.components().parts;
    let f = family(g);
    let pieces: Vec<CutSetFamily> = parts.iter().map(|&p| family(&g.induced(p))).collect();
    let mut expected = BTreeSet::from([VertexSet::EMPTY]);
    for piece in &pieces {
        expected = expected
            .iter()
            .flat_map(|&a| piece.sets().map(move |b| a | b))
            .collect();
    }
    if sets(&f) != expected {
        return Err("cut sets are not unions over components".into());
    }
    if f.is_unmixed() != pieces.iter().all(CutSetFamily::is_unmixed) {
        return Err("unmixedness is not componentwise".into());
    }
    if accessible(&f) != pieces.iter().all(accessible) {
        return Err("accessibility is not componentwise".into());
    }
    let su = |x: &Graph| is_strongly_unmixed(x).unwrap().verdict;
    if su(g) != parts.iter().all(|&p| su(&g.induced(p))) {
        return Err("strong unmixedness is not componentwise".into());
    }
    Ok(())
}

/// All single-graph lemma checks.
pub fn all(g: &Graph) -> Check {
    completion(g)?;
    reconnection(g)?;
    deletion_equivalences(g)?;
    completed_deletion(g)?;
    cut_vertex_subsets(g)?;
    non_cut_vertex_removal(g)?;
    component_split(g)?;
    prefix_orderings(g)
}

/// Graph on `1..=n` whose edges are the set bits of `mask` over pairs in
/// lexicographic order.
pub fn from_mask(n: usize, mask: u64) -> Graph {
    let mut g = Graph::empty(VertexSet::range(n));
    let mut bit = 0;
    for u in 1..=n {
        for v in u + 1..=n {
            if mask >> bit & 1 == 1 {
                g.add_edge(u, v).unwrap();
            }
            bit += 1;
        }
    }
    g
}
