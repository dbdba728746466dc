mod common;

use std::collections::HashSet;
use std::fs;

use bei_core::graph::{encode_graph6, Graph};
use bei_core::linalg::Field;
use bei_core::survey::{
    analyze, check_record, connected_graphs_up_to, generate_connected_graphs, load_records, run_survey, AnalysisRecord,
    Assertion, FindingKind, SurveyConfig, SurveySummary,
};
use bei_core::Error;
use common::*;

/// Brute-force isomorphism classes: every labeled connected graph on `n`
/// vertices, keyed by the least adjacency bit string over all permutations.
fn brute_force_class_count(n: usize) -> usize {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let perms = permutations(n);
    let mut classes = HashSet::new();
    for mask in 0u32..1 << pairs.len() {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        if !connected(n, &edges) {
            continue;
        }
        let key = perms
            .iter()
            .map(|p| {
                let mut bits = 0u64;
                for &(a, b) in &edges {
                    let (x, y) = (p[a].min(p[b]), p[a].max(p[b]));
                    bits |= 1 << pairs.iter().position(|&q| q == (x, y)).unwrap();
                }
                bits
            })
            .min()
            .unwrap();
        classes.insert(key);
    }
    classes.len()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for at in 0..=p.len() {
            let mut q = p.clone();
            q.insert(at, n - 1);
            out.push(q);
        }
    }
    out
}

fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for &(a, b) in edges {
            for (x, y) in [(a, b), (b, a)] {
                if x == u && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

#[test]
fn generator_matches_brute_force_classes() {
    for n in 1..=5 {
        assert_eq!(
            generate_connected_graphs(n).unwrap().len(),
            brute_force_class_count(n),
            "n={n}"
        );
    }
    assert_eq!(generate_connected_graphs(3).unwrap().len(), 2);
    assert_eq!(generate_connected_graphs(6).unwrap().len(), 112);
}

#[test]
fn generated_graphs_are_pairwise_non_isomorphic() {
    let gs = generate_connected_graphs(6).unwrap();
    let keys: HashSet<String> = gs.iter().map(|g| analyze(g).unwrap().key).collect();
    assert_eq!(keys.len(), gs.len());
}

#[test]
fn accessible_eleven_record() {
    let r = analyze(&accessible_eleven()).unwrap();
    assert!(r.accessible);
    assert!(!r.chordal);
    assert!(check_record(&r).is_empty());
    assert_eq!(r.cm_all(), r.strongly_unmixed);
}

#[test]
fn rinaldo_record() {
    let r = analyze(&rinaldo()).unwrap();
    assert!(r.unmixed && !r.accessible);
    assert!(!r.cm_any());
    assert!(r.cm_failure.is_some());
}

#[test]
fn complete_graph_record() {
    let r = analyze(&Graph::complete(5)).unwrap();
    assert!(r.unmixed && r.accessible && r.strongly_unmixed && r.cm_all() && r.hirsch);
    assert_eq!(r.height, 4);
    assert_eq!(r.combination(), "U A S C");
}

#[test]
fn disconnected_input_is_analyzed() {
    let g = graph(&[(1, 2), (2, 3), (1, 3), (4, 5), (5, 6)]);
    let r = analyze(&g).unwrap();
    assert!(!r.connected);
    assert_eq!(r.block_graph_is_tree, None);
    assert!(check_record(&r).is_empty());
}

#[test]
fn stuck_graph_is_reported_as_a_finding() {
    let stream = vec![Ok(Graph::path(3)), Ok(structural_but_stuck())];
    let s = run_survey(stream, &SurveyConfig::default()).unwrap();
    assert!(s.violations.is_empty());
    let kinds: Vec<FindingKind> = s.findings.iter().map(|f| f.kind).collect();
    assert_eq!(kinds, vec![FindingKind::StructuralNotAccessible]);
    assert_eq!(s.findings[0].graph6, encode_graph6(&structural_but_stuck()));
}

#[test]
fn empty_stream() {
    let s = run_survey(Vec::<bei_core::Result<Graph>>::new(), &SurveyConfig::default()).unwrap();
    assert_eq!(s.total(), 0);
    assert_eq!(s.processed, 0);
    assert!(s.per_order.is_empty() && s.findings.is_empty() && !s.halted);
}

#[test]
fn duplicates_are_counted_once() {
    let a = graph(&[(1, 2), (2, 3)]);
    let b = graph(&[(1, 3), (3, 2)]);
    let s = run_survey(vec![Ok(a), Ok(b)], &SurveyConfig::default()).unwrap();
    assert_eq!((s.processed, s.duplicates), (1, 1));
}

#[test]
fn stream_errors_propagate() {
    let stream = vec![Ok(Graph::path(2)), Err(Error::Graph6("bad".into()))];
    assert!(run_survey(stream, &SurveyConfig::default()).is_err());
}

#[test]
fn small_survey_has_no_violations() {
    let s = run_survey(
        connected_graphs_up_to(1, 6).unwrap().into_iter().map(Ok),
        &SurveyConfig::default(),
    )
    .unwrap();
    assert!(s.violations.is_empty(), "{:?}", s.violations);
    assert_eq!(s.total(), 1 + 1 + 2 + 6 + 21 + 112);
    assert_eq!(s.per_order[&6].graphs, 112);
}

fn config_with(path: &std::path::Path, resume: bool) -> SurveyConfig {
    SurveyConfig {
        jsonl: Some(path.to_path_buf()),
        resume,
        batch: 7,
        ..SurveyConfig::default()
    }
}

fn source(n: usize) -> impl Iterator<Item = bei_core::Result<Graph>> {
    connected_graphs_up_to(1, n).unwrap().into_iter().map(Ok)
}

#[test]
fn resume_skips_recorded_graphs() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.jsonl");
    let first = run_survey(source(5), &config_with(&path, false)).unwrap();
    assert_eq!(first.processed, 31);
    let second = run_survey(source(5), &config_with(&path, true)).unwrap();
    assert_eq!((second.processed, second.resumed), (0, 31));
    assert_eq!(second.per_order, first.per_order);
    assert_eq!(load_records(&path).unwrap().len(), 31);
}

#[test]
fn truncated_last_line_is_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.jsonl");
    run_survey(source(5), &config_with(&path, false)).unwrap();
    let text = fs::read_to_string(&path).unwrap();
    let cut = text.trim_end().rfind('\n').unwrap() + 1 + 40;
    fs::write(&path, &text[..cut]).unwrap();
    let resumed = run_survey(source(5), &config_with(&path, true)).unwrap();
    assert_eq!((resumed.processed, resumed.resumed), (1, 30));
    assert_eq!(fs::read_to_string(&path).unwrap().lines().count(), 31);
    assert_eq!(load_records(&path).unwrap().len(), 31);
}

#[test]
fn corrupt_interior_line_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.jsonl");
    run_survey(source(4), &config_with(&path, false)).unwrap();
    let text = fs::read_to_string(&path).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    lines[2] = lines[2].replacen("\"edges\":", "\"edges\":1", 1);
    fs::write(&path, lines.join("\n") + "\n").unwrap();
    match run_survey(source(4), &config_with(&path, true)) {
        Err(Error::CorruptCheckpoint { line, .. }) => assert_eq!(line, 3),
        other => panic!("expected a corrupt checkpoint, got {other:?}"),
    }
}

fn strip_timing(mut records: Vec<AnalysisRecord>) -> Vec<AnalysisRecord> {
    for r in &mut records {
        r.micros = 0;
    }
    records
}

#[test]
fn sharded_runs_merge_to_the_serial_summary() {
    let dir = tempfile::tempdir().unwrap();
    let serial_path = dir.path().join("serial.jsonl");
    let serial = run_survey(source(6), &config_with(&serial_path, false)).unwrap();

    let low = run_survey(
        connected_graphs_up_to(1, 4).unwrap().into_iter().map(Ok),
        &SurveyConfig::default(),
    )
    .unwrap();
    let high = run_survey(
        connected_graphs_up_to(5, 6).unwrap().into_iter().map(Ok),
        &SurveyConfig {
            jobs: Some(2),
            ..SurveyConfig::default()
        },
    )
    .unwrap();
    let mut merged = SurveySummary::default();
    merged.merge(&high);
    merged.merge(&low);
    assert_eq!(merged, serial);

    let again_path = dir.path().join("again.jsonl");
    run_survey(source(6), &config_with(&again_path, false)).unwrap();
    assert_eq!(
        strip_timing(load_records(&serial_path).unwrap()),
        strip_timing(load_records(&again_path).unwrap())
    );
}

#[test]
fn implication_checks_fire() {
    let mut r = analyze(&Graph::path(4)).unwrap();
    assert!(check_record(&r).is_empty());
    r.cm.insert(Field::Prime(2), false);
    let broken = check_record(&r);
    assert!(broken.contains(&Assertion::StrongImpliesCm));
    assert!(broken.contains(&Assertion::ClassEquivalence));

    let mut r = analyze(&rinaldo()).unwrap();
    r.cm.insert(Field::Rationals, true);
    assert!(check_record(&r).contains(&Assertion::CmImpliesAccessible));
}

#[test]
fn records_round_trip_through_json() {
    let r = analyze(&good_cut_vertex()).unwrap();
    let line = bei_core::survey::encode_line(&r).unwrap();
    assert_eq!(bei_core::survey::decode_line(&line).unwrap(), r);
    let tampered = line.replacen("\"n\":", "\"n\":1", 1);
    assert!(bei_core::survey::decode_line(&tampered).is_err());
}

#[test]
fn vertex_labels_do_not_matter() {
    let g = graph(&[(10, 20), (20, 30), (30, 10), (30, 40)]);
    let h = graph(&[(1, 2), (2, 3), (3, 1), (3, 4)]);
    let (a, b) = (analyze(&g).unwrap(), analyze(&h).unwrap());
    assert_eq!(a.key, b.key);
    assert_eq!(a.graph6, b.graph6);
}
