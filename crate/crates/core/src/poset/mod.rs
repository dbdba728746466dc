//! The poset of iterated sums of minimal primes, and the Cohen-Macaulay test
//! via reduced homology of its open intervals.

mod rep;

use std::collections::{HashSet, VecDeque};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::cutsets::enumerate_cut_sets;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{BettiVector, Field, SimplicialComplex};

pub use rep::RadicalIdealRep;

/// Cap on distinct reps (prime or not) seen while building a poset.
pub const MAX_POSET_REPS: usize = 20_000;

/// Primes reachable from `J_G` by repeated sums of minimal primes, ordered
/// by reverse inclusion, with an implicit top element.
#[derive(Clone, Debug, Serialize)]
pub struct PosetQ {
    nodes: Vec<RadicalIdealRep>,
    /// `below[q]`: nodes whose ideal is strictly inside node `q`'s ideal.
    below: Vec<Vec<usize>>,
    #[serde(skip)]
    minimal: Vec<bool>,
}

impl PosetQ {
    pub fn nodes(&self) -> &[RadicalIdealRep] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn position(&self, rep: &RadicalIdealRep) -> Option<usize> {
        self.nodes.iter().position(|r| r == rep)
    }

    /// Whether node `q` is a minimal prime of `J_G`.
    pub fn is_minimal_prime(&self, q: usize) -> bool {
        self.minimal[q]
    }

    /// Nodes strictly contained in node `q`: the open interval `(q, 1)`.
    pub fn interval(&self, q: usize) -> &[usize] {
        &self.below[q]
    }

    /// Order complex of the open interval `(q, 1)`; vertices are positions in [`Self::interval`].
    pub fn interval_complex(&self, q: usize) -> SimplicialComplex {
        let members = &self.below[q];
        SimplicialComplex::order_complex(members.len(), |a, b| {
            self.below[members[b]].binary_search(&members[a]).is_ok()
        })
    }

    /// The interval `(q, 1)` with beat points removed until none remain.
    ///
    /// An element is a beat point when the elements above it have a least
    /// one, or the elements below it have a greatest one. Deleting it does
    /// not change the homotopy type of the order complex, so the core has
    /// the same reduced Betti numbers as the whole interval.
    pub fn interval_core(&self, q: usize) -> Vec<usize> {
        let members = &self.below[q];
        let m = members.len();
        let words = m.div_ceil(64);
        let mut up = vec![vec![0u64; words]; m];
        let mut down = vec![vec![0u64; words]; m];
        for a in 0..m {
            for b in 0..m {
                if self.below[members[b]].binary_search(&members[a]).is_ok() {
                    up[a][b / 64] |= 1 << (b % 64);
                    down[b][a / 64] |= 1 << (a % 64);
                }
            }
        }
        let mut alive = vec![!0u64; words];
        if !m.is_multiple_of(64) {
            alive[words - 1] = (1 << (m % 64)) - 1;
        }
        let mut changed = true;
        while changed {
            changed = false;
            for x in 0..m {
                if alive[x / 64] >> (x % 64) & 1 == 1
                    && (has_extremum(&up[x], &alive, &down, &up) || has_extremum(&down[x], &alive, &up, &down))
                {
                    alive[x / 64] &= !(1 << (x % 64));
                    changed = true;
                }
            }
        }
        (0..m)
            .filter(|&x| alive[x / 64] >> (x % 64) & 1 == 1)
            .map(|x| members[x])
            .collect()
    }

    /// Order complex of [`Self::interval_core`], vertices indexing the core.
    pub fn core_complex(&self, q: usize) -> SimplicialComplex {
        let core = self.interval_core(q);
        SimplicialComplex::order_complex(core.len(), |a, b| self.below[core[b]].binary_search(&core[a]).is_ok())
    }

    /// Cover relations `(lower, upper)` of the node order, where `lower`
    /// strictly contains `upper`; `None` stands for the top element.
    pub fn hasse_edges(&self) -> Vec<(usize, Option<usize>)> {
        let mut out = Vec::new();
        for q in 0..self.nodes.len() {
            for &r in &self.below[q] {
                let covered = !self.below[q]
                    .iter()
                    .any(|&m| m != r && self.below[m].binary_search(&r).is_ok());
                if covered {
                    out.push((q, Some(r)));
                }
            }
            if self.below[q].is_empty() {
                out.push((q, None));
            }
        }
        out
    }

    /// Hasse diagram in DOT; nodes are labelled by their rep and `d_q`.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph poset {\n  rankdir=BT;\n  top [label=\"1\"];\n");
        for (i, r) in self.nodes.iter().enumerate() {
            let _ = writeln!(s, "  n{i} [label=\"{r}\\nd={}\"];", r.dim());
        }
        for (lower, upper) in self.hasse_edges() {
            match upper {
                Some(u) => {
                    let _ = writeln!(s, "  n{lower} -> n{u};");
                }
                None => {
                    let _ = writeln!(s, "  n{lower} -> top;");
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Whether `rel[x] ∩ alive` is non-empty with an element `e` such that the
/// rest lies in `rel[e]`; `toward[e]` runs back toward `x`.
fn has_extremum(set: &[u64], alive: &[u64], toward: &[Vec<u64>], rel: &[Vec<u64>]) -> bool {
    let live: Vec<u64> = set.iter().zip(alive).map(|(s, a)| s & a).collect();
    let Some(e) = first_bit(&live, |e| toward[e].iter().zip(&live).all(|(t, l)| t & l == 0)) else {
        return false;
    };
    live.iter()
        .zip(&rel[e])
        .enumerate()
        .all(|(w, (l, r))| l & !r & !(if w == e / 64 { 1 << (e % 64) } else { 0 }) == 0)
}

fn first_bit(bits: &[u64], pred: impl Fn(usize) -> bool) -> Option<usize> {
    for (w, &word) in bits.iter().enumerate() {
        let mut rest = word;
        while rest != 0 {
            let b = w * 64 + rest.trailing_zeros() as usize;
            if pred(b) {
                return Some(b);
            }
            rest &= rest - 1;
        }
    }
    None
}

/// All subset sums of `gens`, by closure from the generators.
fn subset_sums(gens: &[RadicalIdealRep], budget: usize) -> Result<Vec<RadicalIdealRep>> {
    let mut seen: HashSet<RadicalIdealRep> = gens.iter().cloned().collect();
    let mut frontier: Vec<RadicalIdealRep> = seen.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for f in &frontier {
            for g in gens {
                let s = f.sum(g);
                if !seen.contains(&s) {
                    if seen.len() >= budget {
                        return Err(Error::SizeBound {
                            what: "poset reps",
                            limit: MAX_POSET_REPS,
                            actual: seen.len() + 1,
                        });
                    }
                    seen.insert(s.clone());
                    next.push(s);
                }
            }
        }
        frontier = next;
    }
    Ok(seen.into_iter().collect())
}

/// Worklist construction: every radical ideal processed contributes the
/// subset sums of its minimal primes; primes become nodes and non-primes
/// are processed in turn.
pub fn build_poset(g: &Graph) -> Result<PosetQ> {
    let family = enumerate_cut_sets(g)?;
    let minimal_primes: Vec<RadicalIdealRep> = family
        .sets()
        .map(|s| RadicalIdealRep::prime_of_cut_set(g, s))
        .collect::<Result<_>>()?;

    let mut primes: HashSet<RadicalIdealRep> = HashSet::new();
    let mut queued: HashSet<RadicalIdealRep> = HashSet::new();
    let mut work: VecDeque<Vec<RadicalIdealRep>> = VecDeque::from([minimal_primes.clone()]);
    while let Some(gens) = work.pop_front() {
        let budget = MAX_POSET_REPS
            .saturating_sub(primes.len() + queued.len())
            .max(gens.len());
        for s in subset_sums(&gens, budget)? {
            if s.is_prime() {
                primes.insert(s);
            } else if queued.insert(s.clone()) {
                work.push_back(s.minimal_primes()?);
            }
        }
        if primes.len() + queued.len() > MAX_POSET_REPS {
            return Err(Error::SizeBound {
                what: "poset reps",
                limit: MAX_POSET_REPS,
                actual: primes.len() + queued.len(),
            });
        }
    }

    let mut nodes: Vec<RadicalIdealRep> = primes.into_iter().collect();
    nodes.sort_by_cached_key(|r| r.key());
    let minimal_set: HashSet<&RadicalIdealRep> = minimal_primes.iter().collect();
    let minimal = nodes.iter().map(|r| minimal_set.contains(r)).collect();
    let below = (0..nodes.len())
        .into_par_iter()
        .map(|q| {
            (0..nodes.len())
                .filter(|&r| r != q && nodes[q].contains(&nodes[r]))
                .collect()
        })
        .collect();
    Ok(PosetQ { nodes, below, minimal })
}

/// A node whose interval homology sits outside the allowed degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CmFailure {
    pub node: usize,
    pub rep: String,
    pub d: usize,
    pub interval_size: usize,
    /// `dim(R/J_G) - d_q - 1`, the one degree allowed to be nonzero.
    pub allowed_degree: isize,
    pub betti: BettiVector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldVerdict {
    pub field: Field,
    pub cm: bool,
    /// Verdict if empty intervals are treated as acyclic.
    pub cm_if_empty_acyclic: bool,
    pub failures: Vec<CmFailure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CmCertificate {
    /// `dim(R/J_G)`, the largest `n + c(S) - |S|`.
    pub dimension: usize,
    pub node_count: usize,
    pub verdicts: Vec<FieldVerdict>,
}

impl CmCertificate {
    pub fn verdict(&self, field: Field) -> Option<bool> {
        self.verdicts.iter().find(|v| v.field == field).map(|v| v.cm)
    }

    pub fn all_cm(&self) -> bool {
        self.verdicts.iter().all(|v| v.cm)
    }

    /// Whether the verdicts differ between fields.
    pub fn field_dependent(&self) -> bool {
        self.verdicts.windows(2).any(|w| w[0].cm != w[1].cm)
    }

    /// Whether the empty-interval convention changes some verdict.
    pub fn convention_flip(&self) -> bool {
        self.verdicts.iter().any(|v| v.cm != v.cm_if_empty_acyclic)
    }
}

/// The Cohen-Macaulay test over each field.
pub fn cm_certificate(g: &Graph, fields: &[Field]) -> Result<CmCertificate> {
    let poset = build_poset(g)?;
    cm_certificate_of(g, &poset, fields)
}

pub fn cm_certificate_of(g: &Graph, poset: &PosetQ, fields: &[Field]) -> Result<CmCertificate> {
    let family = enumerate_cut_sets(g)?;
    let n = g.order();
    let dimension = family
        .entries()
        .iter()
        .map(|e| n + e.components - e.set.len())
        .max()
        .unwrap_or(0);

    let per_node: Vec<Vec<BettiVector>> = (0..poset.len())
        .into_par_iter()
        .map(|q| {
            let complex = poset.core_complex(q);
            fields.iter().map(|&f| complex.reduced_betti(f)).collect()
        })
        .collect();

    let mut verdicts: Vec<FieldVerdict> = fields
        .iter()
        .map(|&field| FieldVerdict {
            field,
            cm: true,
            cm_if_empty_acyclic: true,
            failures: Vec::new(),
        })
        .collect();
    for (q, bettis) in per_node.into_iter().enumerate() {
        let d = poset.nodes[q].dim();
        let allowed = dimension as isize - d as isize - 1;
        let empty = poset.interval(q).is_empty();
        for (fi, betti) in bettis.into_iter().enumerate() {
            let bad = betti.support().into_iter().any(|deg| deg != allowed);
            if bad {
                let v = &mut verdicts[fi];
                v.cm = false;
                if !empty {
                    v.cm_if_empty_acyclic = false;
                }
                v.failures.push(CmFailure {
                    node: q,
                    rep: poset.nodes[q].to_string(),
                    d,
                    interval_size: poset.interval(q).len(),
                    allowed_degree: allowed,
                    betti,
                });
            }
        }
    }
    Ok(CmCertificate {
        dimension,
        node_count: poset.len(),
        verdicts,
    })
}
