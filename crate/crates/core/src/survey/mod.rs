//! Exhaustive checking of the implication chain and class theorems over
//! small graphs, with JSONL persistence.

mod generate;
mod record;
mod store;

use std::collections::{BTreeMap, HashSet};
use std::path::PathBuf;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::graph::{canonical_form, Graph};

pub use generate::{canonical_graph, generate_connected_graphs, MAX_GENERATED_ORDER};
pub use record::{analyze, AnalysisRecord, Analyzer};
pub use store::{decode_line, encode_line, load_records, JsonlStore};

/// A theorem-backed implication that a record breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Assertion {
    /// Strongly unmixed but not CM over some field.
    StrongImpliesCm,
    /// CM over some field but not accessible.
    CmImpliesAccessible,
    /// Chordal, traceable or bipartite, yet the three verdicts disagree.
    ClassEquivalence,
    /// Unmixed and connected, with a block graph that is not a tree.
    BlockTree,
    /// CM with a dual graph that is disconnected or too wide.
    Hirsch,
    /// Accessible with two or more cut vertices, failing a structural check.
    Structural,
}

/// Conjecture-relevant behaviour that no theorem rules out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FindingKind {
    AccessibleNotCm,
    FieldDependent,
    /// Treating empty intervals as acyclic would change a verdict.
    ConventionFlip,
    /// Unmixed, passes the structural checks, but not accessible.
    StructuralNotAccessible,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub assertion: Assertion,
    pub record: AnalysisRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub kind: FindingKind,
    pub key: String,
    pub graph6: String,
    pub n: usize,
}

/// Implications the record breaks.
pub fn check_record(r: &AnalysisRecord) -> Vec<Assertion> {
    let mut out = Vec::new();
    if r.strongly_unmixed && !r.cm_all() {
        out.push(Assertion::StrongImpliesCm);
    }
    if r.cm_any() && !r.accessible {
        out.push(Assertion::CmImpliesAccessible);
    }
    if (r.chordal || r.traceable || r.bipartite) && r.cm.values().any(|&c| c != r.accessible || c != r.strongly_unmixed)
    {
        out.push(Assertion::ClassEquivalence);
    }
    if r.unmixed && r.block_graph_is_tree == Some(false) {
        out.push(Assertion::BlockTree);
    }
    if r.cm_any() && !(r.hirsch && r.dual_diameter.is_some_and(|d| d < r.n.max(1))) {
        out.push(Assertion::Hirsch);
    }
    if r.accessible && r.cut_vertices >= 2 && r.structural == Some(false) {
        out.push(Assertion::Structural);
    }
    out
}

pub fn findings_of(r: &AnalysisRecord) -> Vec<FindingKind> {
    let mut out = Vec::new();
    if r.accessible && !r.cm_all() {
        out.push(FindingKind::AccessibleNotCm);
    }
    if r.field_dependent() {
        out.push(FindingKind::FieldDependent);
    }
    if r.convention_flip() {
        out.push(FindingKind::ConventionFlip);
    }
    if r.unmixed && !r.accessible && r.cut_vertices >= 2 && r.structural == Some(true) {
        out.push(FindingKind::StructuralNotAccessible);
    }
    out
}

/// Per-order tallies.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OrderCounts {
    pub graphs: usize,
    pub unmixed: usize,
    pub accessible: usize,
    pub strongly_unmixed: usize,
    pub cm: usize,
    pub chordal: usize,
    pub traceable: usize,
    pub bipartite: usize,
    pub hirsch: usize,
    /// Keyed by [`AnalysisRecord::combination`].
    pub combinations: BTreeMap<String, usize>,
}

impl OrderCounts {
    fn add(&mut self, r: &AnalysisRecord) {
        self.graphs += 1;
        self.unmixed += r.unmixed as usize;
        self.accessible += r.accessible as usize;
        self.strongly_unmixed += r.strongly_unmixed as usize;
        self.cm += r.cm_all() as usize;
        self.chordal += r.chordal as usize;
        self.traceable += r.traceable as usize;
        self.bipartite += r.bipartite as usize;
        self.hirsch += r.hirsch as usize;
        *self.combinations.entry(r.combination()).or_default() += 1;
    }

    fn merge(&mut self, o: &OrderCounts) {
        self.graphs += o.graphs;
        self.unmixed += o.unmixed;
        self.accessible += o.accessible;
        self.strongly_unmixed += o.strongly_unmixed;
        self.cm += o.cm;
        self.chordal += o.chordal;
        self.traceable += o.traceable;
        self.bipartite += o.bipartite;
        self.hirsch += o.hirsch;
        for (k, v) in &o.combinations {
            *self.combinations.entry(k.clone()).or_default() += v;
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SurveySummary {
    /// Graphs analyzed in this run.
    pub processed: usize,
    /// Records taken from an existing JSONL file.
    pub resumed: usize,
    /// Graphs skipped after an analysis error.
    pub skipped: usize,
    /// Repeated isomorphism classes in the source.
    pub duplicates: usize,
    pub per_order: BTreeMap<usize, OrderCounts>,
    pub violations: Vec<Violation>,
    pub findings: Vec<Finding>,
    /// Whether processing stopped at a violation.
    pub halted: bool,
    pub conjecture_status: String,
}

impl SurveySummary {
    pub fn total(&self) -> usize {
        self.per_order.values().map(|c| c.graphs).sum()
    }

    fn record(&mut self, r: &AnalysisRecord, assertions: bool) {
        self.per_order.entry(r.n).or_default().add(r);
        if assertions {
            for assertion in check_record(r) {
                self.violations.push(Violation {
                    assertion,
                    record: r.clone(),
                });
            }
        }
        for kind in findings_of(r) {
            self.findings.push(Finding {
                kind,
                key: r.key.clone(),
                graph6: r.graph6.clone(),
                n: r.n,
            });
        }
    }

    /// Fold in a summary over a disjoint set of graphs.
    pub fn merge(&mut self, other: &SurveySummary) {
        self.processed += other.processed;
        self.resumed += other.resumed;
        self.skipped += other.skipped;
        self.duplicates += other.duplicates;
        for (n, c) in &other.per_order {
            self.per_order.entry(*n).or_default().merge(c);
        }
        self.violations.extend(other.violations.iter().cloned());
        self.findings.extend(other.findings.iter().cloned());
        self.halted |= other.halted;
        self.finish();
    }

    fn finish(&mut self) {
        self.violations
            .sort_by(|a, b| (a.record.n, &a.record.key, a.assertion).cmp(&(b.record.n, &b.record.key, b.assertion)));
        self.findings
            .sort_by(|a, b| (a.n, &a.key, a.kind).cmp(&(b.n, &b.key, b.kind)));
        let candidates: HashSet<&str> = self
            .findings
            .iter()
            .filter(|f| f.kind == FindingKind::AccessibleNotCm)
            .map(|f| f.key.as_str())
            .collect();
        self.conjecture_status = if candidates.is_empty() {
            format!("CM <=> accessible on all {} graphs", self.total())
        } else {
            format!(
                "{} accessible graph(s) not CM over some field, out of {}",
                candidates.len(),
                self.total()
            )
        };
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum AssertionSet {
    #[default]
    Theorems,
    None,
}

#[derive(Clone, Debug)]
pub struct SurveyConfig {
    pub fields: Vec<crate::linalg::Field>,
    pub assertions: AssertionSet,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    /// Strong-unmixedness memo cap, zero for unbounded.
    pub memo_max: usize,
    pub jsonl: Option<PathBuf>,
    pub resume: bool,
    /// Graphs analyzed per batch between writes.
    pub batch: usize,
}

impl Default for SurveyConfig {
    fn default() -> Self {
        SurveyConfig {
            fields: crate::linalg::Field::DEFAULTS.to_vec(),
            assertions: AssertionSet::Theorems,
            jobs: None,
            memo_max: 0,
            jsonl: None,
            resume: false,
            batch: 256,
        }
    }
}

/// Analyze every graph of `source` in order, writing records and checking
/// the implication chain; stops after the batch holding the first violation.
pub fn run_survey<I>(source: I, config: &SurveyConfig) -> Result<SurveySummary>
where
    I: IntoIterator<Item = Result<Graph>>,
{
    let pool = config.jobs.map(|k| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .expect("thread pool construction")
    });
    let assertions = config.assertions == AssertionSet::Theorems;
    let analyzer = Analyzer::new(config.fields.clone(), config.memo_max);
    let mut summary = SurveySummary::default();
    let mut seen: HashSet<String> = HashSet::new();

    let mut store = match &config.jsonl {
        Some(path) if config.resume => {
            let (store, existing) = JsonlStore::resume(path)?;
            for r in existing {
                if seen.insert(r.key.clone()) {
                    summary.resumed += 1;
                    summary.record(&r, assertions);
                }
            }
            Some(store)
        }
        Some(path) => Some(JsonlStore::create(path)?),
        None => None,
    };
    if !summary.violations.is_empty() {
        summary.halted = true;
        summary.finish();
        return Ok(summary);
    }

    let mut source = source.into_iter();
    let batch_size = config.batch.max(1);
    loop {
        let mut batch = Vec::with_capacity(batch_size);
        for item in source.by_ref() {
            let g = item?;
            let key = String::from_utf8(canonical_form(&g.compact())).expect("graph6 is ASCII");
            if seen.insert(key) {
                batch.push(g);
            } else {
                summary.duplicates += 1;
            }
            if batch.len() == batch_size {
                break;
            }
        }
        if batch.is_empty() {
            break;
        }
        let analyze_all = || -> Vec<Result<AnalysisRecord>> { batch.par_iter().map(|g| analyzer.analyze(g)).collect() };
        let results = match &pool {
            Some(p) => p.install(analyze_all),
            None => analyze_all(),
        };
        for (g, result) in batch.iter().zip(results) {
            match result {
                Ok(r) => {
                    if let Some(s) = store.as_mut() {
                        s.append(&r)?;
                    }
                    summary.processed += 1;
                    summary.record(&r, assertions);
                }
                Err(e) => {
                    log::warn!("skipping {}: {e}", crate::graph::encode_graph6(g));
                    summary.skipped += 1;
                }
            }
        }
        if let Some(s) = store.as_mut() {
            s.flush()?;
        }
        if !summary.violations.is_empty() {
            summary.halted = true;
            break;
        }
    }
    summary.finish();
    Ok(summary)
}

/// Every connected graph on `lo..=hi` vertices, smallest order first.
pub fn connected_graphs_up_to(lo: usize, hi: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in lo..=hi {
        out.extend(generate_connected_graphs(n)?);
    }
    Ok(out)
}
