//! Canonical labeling by colour refinement plus individualization.
//!
//! Every leaf of the search tree gives a vertex ordering; the canonical form
//! is the lexicographically least graph6 string over all leaves. Twins
//! (equal open or closed neighborhoods) in a target cell are interchangeable,
//! so only one of each twin class is individualized.

use super::{Graph, Vertex};

struct Search {
    n: usize,
    adj: Vec<u64>,
    best: Option<(Vec<u8>, Vec<usize>)>,
}

/// Labels of `g` listed in canonical order.
pub fn canonical_labeling(g: &Graph) -> Vec<Vertex> {
    let labels = g.vertices().to_vec();
    let order = search(g, &labels).1;
    order.into_iter().map(|i| labels[i]).collect()
}

/// graph6 bytes of the canonical relabeling; equal iff the graphs are isomorphic.
pub fn canonical_form(g: &Graph) -> Vec<u8> {
    let labels = g.vertices().to_vec();
    search(g, &labels).0
}

fn search(g: &Graph, labels: &[Vertex]) -> (Vec<u8>, Vec<usize>) {
    let n = labels.len();
    let mut index = [usize::MAX; 65];
    for (i, &v) in labels.iter().enumerate() {
        index[v] = i;
    }
    let adj = labels
        .iter()
        .map(|&v| g.neighbors(v).iter().fold(0u64, |acc, w| acc | 1 << index[w]))
        .collect();
    let mut s = Search { n, adj, best: None };
    let mut cells = vec![(0..n).collect::<Vec<_>>()];
    if n > 0 {
        s.refine(&mut cells);
    } else {
        cells.clear();
    }
    s.descend(cells);
    s.best.expect("the search visits at least one leaf")
}

impl Search {
    /// Split cells until every vertex in a cell has the same number of
    /// neighbors in each cell.
    fn refine(&self, cells: &mut Vec<Vec<usize>>) {
        loop {
            let masks: Vec<u64> = cells.iter().map(|c| c.iter().fold(0u64, |m, &u| m | 1 << u)).collect();
            let mut next = Vec::with_capacity(cells.len());
            for cell in cells.iter() {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<u32>, usize)> = cell
                    .iter()
                    .map(|&v| {
                        let sig = masks.iter().map(|m| (self.adj[v] & m).count_ones()).collect();
                        (sig, v)
                    })
                    .collect();
                keyed.sort();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                        start = i;
                    }
                }
            }
            let stable = next.len() == cells.len();
            *cells = next;
            if stable {
                return;
            }
        }
    }

    fn descend(&mut self, cells: Vec<Vec<usize>>) {
        let target = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(i, c)| (c.len(), *i))
            .map(|(i, _)| i);
        let Some(t) = target else {
            let order: Vec<usize> = cells.into_iter().map(|c| c[0]).collect();
            let code = self.encode(&order);
            if self.best.as_ref().is_none_or(|(b, _)| code < *b) {
                self.best = Some((code, order));
            }
            return;
        };
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cells[t] {
            if tried.iter().any(|&u| self.twins(u, v)) {
                continue;
            }
            tried.push(v);
            let mut branch = Vec::with_capacity(cells.len() + 1);
            branch.extend_from_slice(&cells[..t]);
            branch.push(vec![v]);
            branch.push(cells[t].iter().copied().filter(|&u| u != v).collect());
            branch.extend_from_slice(&cells[t + 1..]);
            self.refine(&mut branch);
            self.descend(branch);
        }
    }

    fn twins(&self, u: usize, v: usize) -> bool {
        let (bu, bv) = (1u64 << u, 1u64 << v);
        self.adj[u] & !bv == self.adj[v] & !bu
    }

    fn encode(&self, order: &[usize]) -> Vec<u8> {
        let n = self.n;
        let mut out = Vec::with_capacity(4 + n * n / 12);
        if n <= 62 {
            out.push(n as u8 + 63);
        } else {
            out.push(126);
            for shift in [12, 6, 0] {
                out.push(((n >> shift) & 0x3f) as u8 + 63);
            }
        }
        let mut acc = 0u8;
        let mut filled = 0;
        for j in 1..n {
            let row = self.adj[order[j]];
            for &oi in &order[..j] {
                acc = (acc << 1) | (row >> oi & 1) as u8;
                filled += 1;
                if filled == 6 {
                    out.push(acc + 63);
                    acc = 0;
                    filled = 0;
                }
            }
        }
        if filled > 0 {
            out.push((acc << (6 - filled)) + 63);
        }
        out
    }
}
