//! Graph-class recognition: chordal, traceable, bipartite, blocks, decomposable.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

/// Largest component accepted by the Hamiltonian-path dynamic program.
pub const MAX_TRACEABLE_COMPONENT: usize = 24;

/// Perfect elimination ordering, if one exists.
///
/// Maximum cardinality search (ties to the smallest label), reversed, then
/// verified directly.
pub fn perfect_elimination_order(g: &Graph) -> Option<Vec<Vertex>> {
    let mut weight = [0usize; 65];
    let mut left = g.vertices();
    let mut visit = Vec::with_capacity(g.order());
    while let Some(v) = left.iter().max_by_key(|&v| (weight[v], std::cmp::Reverse(v))) {
        left.remove(v);
        visit.push(v);
        for u in g.neighbors(v) & left {
            weight[u] += 1;
        }
    }
    visit.reverse();
    let mut later = g.vertices();
    for &v in &visit {
        later.remove(v);
        if !g.is_clique(g.neighbors(v) & later) {
            return None;
        }
    }
    Some(visit)
}

pub fn is_chordal(g: &Graph) -> bool {
    perfect_elimination_order(g).is_some()
}

/// One Hamiltonian path per component, or `None` if some component has none.
pub fn hamiltonian_paths(g: &Graph) -> Result<Option<Vec<Vec<Vertex>>>> {
    let mut paths = Vec::new();
    for part in g.components().parts {
        if part.len() > MAX_TRACEABLE_COMPONENT {
            return Err(Error::SizeBound {
                what: "Hamiltonian-path component size",
                limit: MAX_TRACEABLE_COMPONENT,
                actual: part.len(),
            });
        }
        match hamiltonian_path(g, part) {
            Some(p) => paths.push(p),
            None => return Ok(None),
        }
    }
    Ok(Some(paths))
}

pub fn is_traceable(g: &Graph) -> Result<bool> {
    Ok(hamiltonian_paths(g)?.is_some())
}

/// `ends[mask]` holds the local indices at which some path covering exactly
/// `mask` can end.
fn hamiltonian_path(g: &Graph, part: VertexSet) -> Option<Vec<Vertex>> {
    let labels = part.to_vec();
    let k = labels.len();
    let local: Vec<u32> = labels
        .iter()
        .map(|&v| {
            labels
                .iter()
                .enumerate()
                .filter(|&(_, &u)| g.has_edge(u, v))
                .fold(0u32, |m, (i, _)| m | 1 << i)
        })
        .collect();
    let full = (1usize << k) - 1;
    let mut ends = vec![0u32; 1 << k];
    for i in 0..k {
        ends[1 << i] = 1 << i;
    }
    for mask in 1..=full {
        let e = ends[mask];
        if e == 0 {
            continue;
        }
        let mut reach = 0u32;
        let mut m = e;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            reach |= local[i];
            m &= m - 1;
        }
        reach &= !(mask as u32);
        while reach != 0 {
            let j = reach.trailing_zeros() as usize;
            ends[mask | 1 << j] |= 1 << j;
            reach &= reach - 1;
        }
    }
    if ends[full] == 0 {
        return None;
    }
    let mut mask = full;
    let mut at = ends[full].trailing_zeros() as usize;
    let mut path = vec![labels[at]];
    while mask.count_ones() > 1 {
        let rest = mask & !(1 << at);
        let prev = ends[rest] & local[at];
        at = prev.trailing_zeros() as usize;
        path.push(labels[at]);
        mask = rest;
    }
    Some(path)
}

/// Two-colouring by breadth-first search.
pub fn is_bipartite(g: &Graph) -> bool {
    let mut colour = [0u8; 65];
    for start in g.vertices() {
        if colour[start] != 0 {
            continue;
        }
        colour[start] = 1;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for w in g.neighbors(u) {
                if colour[w] == 0 {
                    colour[w] = 3 - colour[u];
                    queue.push_back(w);
                } else if colour[w] == colour[u] {
                    return false;
                }
            }
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockDecomposition {
    /// Maximal 2-connected pieces and bridges, sorted.
    pub blocks: Vec<VertexSet>,
    /// Cut vertices of the graph inside each block.
    pub cut_vertex_map: Vec<VertexSet>,
    /// Block `i` is vertex `i + 1`; blocks sharing a cut vertex are adjacent.
    #[serde(skip)]
    pub block_graph: Graph,
}

impl BlockDecomposition {
    pub fn block_graph_is_tree(&self) -> bool {
        self.block_graph.is_connected() && self.block_graph.edge_count() + 1 == self.blocks.len()
    }
}

struct LowLink<'a> {
    g: &'a Graph,
    order: [usize; 65],
    low: [usize; 65],
    clock: usize,
    stack: Vec<(Vertex, Vertex)>,
    blocks: Vec<VertexSet>,
}

impl LowLink<'_> {
    fn visit(&mut self, u: Vertex, parent: Option<Vertex>) {
        self.clock += 1;
        self.order[u] = self.clock;
        self.low[u] = self.clock;
        for w in self.g.neighbors(u) {
            if Some(w) == parent {
                continue;
            }
            if self.order[w] == 0 {
                self.stack.push((u, w));
                self.visit(w, Some(u));
                self.low[u] = self.low[u].min(self.low[w]);
                if self.low[w] >= self.order[u] {
                    let mut block = VertexSet::EMPTY;
                    while let Some((a, b)) = self.stack.pop() {
                        block = block.with(a).with(b);
                        if (a, b) == (u, w) {
                            break;
                        }
                    }
                    self.blocks.push(block);
                }
            } else if self.order[w] < self.order[u] {
                self.stack.push((u, w));
                self.low[u] = self.low[u].min(self.order[w]);
            }
        }
    }
}

/// Biconnected components by DFS low-links; bridges are `K_2` blocks.
pub fn blocks(g: &Graph) -> Result<BlockDecomposition> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut blocks = match g.vertices().first() {
        None => Vec::new(),
        Some(root) if g.order() == 1 => vec![VertexSet::singleton(root)],
        Some(root) => {
            let mut ll = LowLink {
                g,
                order: [0; 65],
                low: [0; 65],
                clock: 0,
                stack: Vec::new(),
                blocks: Vec::new(),
            };
            ll.visit(root, None);
            ll.blocks
        }
    };
    blocks.sort();
    let cut = g.cut_vertices();
    let cut_vertex_map: Vec<VertexSet> = blocks.iter().map(|&b| b & cut).collect();
    let mut block_graph = Graph::empty(VertexSet::range(blocks.len()));
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            if !(cut_vertex_map[i] & cut_vertex_map[j]).is_empty() {
                block_graph.add_edge(i + 1, j + 1)?;
            }
        }
    }
    Ok(BlockDecomposition {
        blocks,
        cut_vertex_map,
        block_graph,
    })
}

pub fn block_graph_is_tree(g: &Graph) -> Result<bool> {
    Ok(blocks(g)?.block_graph_is_tree())
}

/// Every block contains at most two cut vertices.
pub fn traceable_block_bound(g: &Graph) -> Result<bool> {
    Ok(blocks(g)?.cut_vertex_map.iter().all(|c| c.len() <= 2))
}

/// A vertex splitting the graph into two sides on which it is free.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub vertex: Vertex,
    pub sides: [VertexSet; 2],
}

pub fn decomposition(g: &Graph) -> Result<Option<Decomposition>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    for v in g.cut_vertices() {
        let parts = g.components_after_removal(VertexSet::singleton(v)).parts;
        if parts.len() != 2 {
            continue;
        }
        let nb = g.neighbors(v);
        if parts.iter().all(|&p| g.is_clique(nb & p)) {
            return Ok(Some(Decomposition {
                vertex: v,
                sides: [parts[0].with(v), parts[1].with(v)],
            }));
        }
    }
    Ok(None)
}

pub fn is_decomposable(g: &Graph) -> Result<bool> {
    Ok(decomposition(g)?.is_some())
}
