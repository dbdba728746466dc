//! Strong unmixedness: the recursion through `G \ {v}`, `G_v` and `G_v \ {v}`.

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::RwLock;

use serde::Serialize;

use super::enumerate_cut_sets;
use crate::error::Result;
use crate::graph::{canonical_form, encode_graph6, Graph, Vertex, VertexSet};

/// Shared verdict cache keyed by canonical form.
///
/// A `max_entries` of zero means unbounded; once full, new verdicts are
/// computed but not stored.
#[derive(Debug, Default)]
pub struct SuMemo {
    map: RwLock<HashMap<Vec<u8>, bool>>,
    max_entries: usize,
    hits: AtomicUsize,
}

impl SuMemo {
    pub fn new(max_entries: usize) -> Self {
        SuMemo {
            max_entries,
            ..SuMemo::default()
        }
    }

    pub fn unbounded() -> Self {
        SuMemo::new(0)
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("memo lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Total lookups answered from the cache.
    pub fn hits(&self) -> usize {
        self.hits.load(Ordering::Relaxed)
    }

    fn get(&self, key: &[u8]) -> Option<bool> {
        let found = self.map.read().expect("memo lock poisoned").get(key).copied();
        if found.is_some() {
            self.hits.fetch_add(1, Ordering::Relaxed);
        }
        found
    }

    fn insert(&self, key: Vec<u8>, verdict: bool) {
        let mut map = self.map.write().expect("memo lock poisoned");
        if self.max_entries == 0 || map.len() < self.max_entries || map.contains_key(&key) {
            map.entry(key).or_insert(verdict);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TraceKind {
    /// Every component is a complete graph.
    CompleteComponents,
    NotUnmixed {
        witness: VertexSet,
    },
    /// Unmixed, but no cut vertex has three strongly unmixed children.
    NoAdmissibleCutVertex {
        tried: VertexSet,
    },
    CutVertex {
        vertex: Vertex,
        deleted: Box<TraceNode>,
        completed: Box<TraceNode>,
        completed_deleted: Box<TraceNode>,
    },
    /// Verdict taken from the memo.
    Memoized,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceNode {
    /// graph6 of the graph at this node, in its own labels.
    pub graph: String,
    pub verdict: bool,
    #[serde(flatten)]
    pub kind: TraceKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrongUnmixednessTrace {
    pub verdict: bool,
    pub root: TraceNode,
    /// Memo hits during this call.
    pub memo_hits: usize,
}

/// Decide strong unmixedness with a fresh, unbounded memo.
pub fn is_strongly_unmixed(g: &Graph) -> Result<StrongUnmixednessTrace> {
    is_strongly_unmixed_with(g, &SuMemo::unbounded())
}

/// Decide strong unmixedness, sharing `memo` with other calls.
///
/// Cut vertices are tried in ascending label order, so the trace names the
/// smallest admissible one.
pub fn is_strongly_unmixed_with(g: &Graph, memo: &SuMemo) -> Result<StrongUnmixednessTrace> {
    let mut hits = 0;
    let root = decide(g, memo, &mut hits, true)?;
    Ok(StrongUnmixednessTrace {
        verdict: root.verdict,
        root,
        memo_hits: hits,
    })
}

fn decide(g: &Graph, memo: &SuMemo, hits: &mut usize, top: bool) -> Result<TraceNode> {
    let graph = encode_graph6(g);
    if g.components_complete() {
        return Ok(TraceNode {
            graph,
            verdict: true,
            kind: TraceKind::CompleteComponents,
        });
    }
    let key = canonical_form(g);
    if !top {
        if let Some(verdict) = memo.get(&key) {
            *hits += 1;
            return Ok(TraceNode {
                graph,
                verdict,
                kind: TraceKind::Memoized,
            });
        }
    }
    let node = expand(g, graph, memo, hits)?;
    memo.insert(key, node.verdict);
    Ok(node)
}

fn expand(g: &Graph, graph: String, memo: &SuMemo, hits: &mut usize) -> Result<TraceNode> {
    if let Some(v) = enumerate_cut_sets(g)?.unmixed_violation() {
        return Ok(TraceNode {
            graph,
            verdict: false,
            kind: TraceKind::NotUnmixed { witness: v.set },
        });
    }
    let tried = g.cut_vertices();
    for v in tried {
        let deleted = decide(&g.remove(VertexSet::singleton(v)), memo, hits, false)?;
        if !deleted.verdict {
            continue;
        }
        let gv = g.complete_neighborhood(v);
        let completed = decide(&gv, memo, hits, false)?;
        if !completed.verdict {
            continue;
        }
        let completed_deleted = decide(&gv.remove(VertexSet::singleton(v)), memo, hits, false)?;
        if !completed_deleted.verdict {
            continue;
        }
        return Ok(TraceNode {
            graph,
            verdict: true,
            kind: TraceKind::CutVertex {
                vertex: v,
                deleted: Box::new(deleted),
                completed: Box::new(completed),
                completed_deleted: Box::new(completed_deleted),
            },
        });
    }
    Ok(TraceNode {
        graph,
        verdict: false,
        kind: TraceKind::NoAdmissibleCutVertex { tried },
    })
}
