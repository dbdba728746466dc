use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::classes::{block_graph_is_tree, is_bipartite, is_chordal, is_decomposable, is_traceable};
use crate::cutsets::{enumerate_cut_sets, is_strongly_unmixed_with, structural_conditions_of, SuMemo};
use crate::error::Result;
use crate::geometry::{dual_graph, hirsch_of};
use crate::graph::{canonical_form, encode_graph6, Graph, VertexSet};
use crate::linalg::Field;
use crate::poset::{build_poset, cm_certificate_of};

/// Every verdict the pipeline produces for one graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisRecord {
    /// graph6 of the canonical relabeling.
    pub key: String,
    /// graph6 of the input, labels compacted.
    pub graph6: String,
    pub n: usize,
    pub edges: usize,
    pub connected: bool,
    pub complete_components: bool,
    pub cut_sets: usize,
    pub cut_vertices: usize,
    pub unmixed: bool,
    pub accessible: bool,
    pub strongly_unmixed: bool,
    pub cm: BTreeMap<Field, bool>,
    pub cm_if_empty_acyclic: BTreeMap<Field, bool>,
    pub poset_nodes: usize,
    pub dimension: usize,
    pub height: usize,
    pub chordal: bool,
    pub traceable: bool,
    pub bipartite: bool,
    pub decomposable: Option<bool>,
    pub hirsch: bool,
    pub dual_diameter: Option<usize>,
    pub block_graph_is_tree: Option<bool>,
    /// All three structural checks, for connected graphs.
    pub structural: Option<bool>,
    pub unmixed_violation: Option<VertexSet>,
    pub stuck_sets: Vec<VertexSet>,
    /// First node failing the homology test, over the first failing field.
    pub cm_failure: Option<String>,
    pub micros: u64,
}

impl AnalysisRecord {
    /// Cohen-Macaulay over every configured field.
    pub fn cm_all(&self) -> bool {
        self.cm.values().all(|&b| b)
    }

    /// Cohen-Macaulay over at least one configured field.
    pub fn cm_any(&self) -> bool {
        self.cm.values().any(|&b| b)
    }

    pub fn field_dependent(&self) -> bool {
        self.cm_any() && !self.cm_all()
    }

    /// Some verdict changes if empty intervals count as acyclic.
    pub fn convention_flip(&self) -> bool {
        self.cm != self.cm_if_empty_acyclic
    }

    /// Flag string such as `U A S C` for the unmixed, accessible,
    /// strongly unmixed and all-field CM verdicts; `-` marks a false one.
    pub fn combination(&self) -> String {
        [
            (self.unmixed, "U"),
            (self.accessible, "A"),
            (self.strongly_unmixed, "S"),
            (self.cm_all(), "C"),
        ]
        .iter()
        .map(|&(b, c)| if b { c } else { "-" })
        .collect::<Vec<_>>()
        .join(" ")
    }
}

/// Field list plus the strong-unmixedness memo shared across graphs.
#[derive(Debug)]
pub struct Analyzer {
    fields: Vec<Field>,
    memo: SuMemo,
}

impl Default for Analyzer {
    fn default() -> Self {
        Analyzer::new(Field::DEFAULTS.to_vec(), 0)
    }
}

impl Analyzer {
    /// `memo_max` caps the memo; zero leaves it unbounded.
    pub fn new(fields: Vec<Field>, memo_max: usize) -> Self {
        Analyzer {
            fields,
            memo: SuMemo::new(memo_max),
        }
    }

    pub fn fields(&self) -> &[Field] {
        &self.fields
    }

    pub fn memo(&self) -> &SuMemo {
        &self.memo
    }

    pub fn analyze(&self, g: &Graph) -> Result<AnalysisRecord> {
        let start = Instant::now();
        let g = g.compact();
        let family = enumerate_cut_sets(&g)?;
        let connected = g.is_connected();
        let strongly_unmixed = is_strongly_unmixed_with(&g, &self.memo)?.verdict;
        let poset = build_poset(&g)?;
        let cert = cm_certificate_of(&g, &poset, &self.fields)?;
        let dual = dual_graph(&g)?;
        let hirsch = hirsch_of(&dual);
        let cm_failure = cert.verdicts.iter().find_map(|v| {
            v.failures
                .first()
                .map(|f| format!("{}: {} {}", v.field, f.rep, f.betti))
        });

        Ok(AnalysisRecord {
            key: String::from_utf8(canonical_form(&g)).expect("graph6 is ASCII"),
            graph6: encode_graph6(&g),
            n: g.order(),
            edges: g.edge_count(),
            connected,
            complete_components: g.components_complete(),
            cut_sets: family.len(),
            cut_vertices: family.cut_vertices().len(),
            unmixed: family.is_unmixed(),
            accessible: family.accessibility().is_accessible(),
            strongly_unmixed,
            cm: cert.verdicts.iter().map(|v| (v.field, v.cm)).collect(),
            cm_if_empty_acyclic: cert.verdicts.iter().map(|v| (v.field, v.cm_if_empty_acyclic)).collect(),
            poset_nodes: poset.len(),
            dimension: cert.dimension,
            height: hirsch.height,
            chordal: is_chordal(&g),
            traceable: is_traceable(&g)?,
            bipartite: is_bipartite(&g),
            decomposable: if connected { Some(is_decomposable(&g)?) } else { None },
            hirsch: hirsch.hirsch,
            dual_diameter: hirsch.diameter,
            block_graph_is_tree: if connected {
                Some(block_graph_is_tree(&g)?)
            } else {
                None
            },
            structural: connected.then(|| structural_conditions_of(&g, &family).all()),
            unmixed_violation: family.unmixed_violation().map(|v| v.set),
            stuck_sets: family.stuck_sets(),
            cm_failure,
            micros: start.elapsed().as_micros() as u64,
        })
    }
}

/// Analysis with the default fields and an unbounded memo.
pub fn analyze(g: &Graph) -> Result<AnalysisRecord> {
    Analyzer::default().analyze(g)
}
