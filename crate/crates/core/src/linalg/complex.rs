use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::{Field, SparseMatrix};

/// Finite abstract simplicial complex on vertices `0..vertex_count`.
///
/// `faces[d]` holds the `d`-dimensional simplices as sorted vertex lists.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimplicialComplex {
    faces: Vec<Vec<Vec<usize>>>,
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        SimplicialComplex::default()
    }

    /// Downward closure of the given facets.
    pub fn from_facets<I, F>(facets: I) -> Self
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = usize>,
    {
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        for facet in facets {
            let mut f: Vec<usize> = facet.into_iter().collect();
            f.sort_unstable();
            f.dedup();
            let k = f.len();
            for mask in 1u64..1 << k {
                all.insert((0..k).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect());
            }
        }
        SimplicialComplex::from_closed(all)
    }

    /// Order complex of a strict partial order on `0..len`: every chain is a simplex.
    ///
    /// `less(a, b)` must be transitive and irreflexive.
    pub fn order_complex(len: usize, less: impl Fn(usize, usize) -> bool) -> Self {
        let above: Vec<Vec<usize>> = (0..len).map(|a| (0..len).filter(|&b| less(a, b)).collect()).collect();
        let mut faces: Vec<Vec<Vec<usize>>> = Vec::new();
        let mut chain = Vec::new();
        for start in 0..len {
            chain.push(start);
            extend_chains(&above, &mut chain, &mut faces);
            chain.pop();
        }
        for layer in &mut faces {
            for s in layer.iter_mut() {
                s.sort_unstable();
            }
            layer.sort();
        }
        SimplicialComplex { faces }
    }

    fn from_closed(all: BTreeSet<Vec<usize>>) -> Self {
        let mut faces: Vec<Vec<Vec<usize>>> = Vec::new();
        for s in all {
            let d = s.len() - 1;
            if faces.len() <= d {
                faces.resize(d + 1, Vec::new());
            }
            faces[d].push(s);
        }
        SimplicialComplex { faces }
    }

    /// Dimension, or `-1` for the empty complex.
    pub fn dimension(&self) -> isize {
        self.faces.len() as isize - 1
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn faces(&self, d: usize) -> &[Vec<usize>] {
        self.faces.get(d).map_or(&[], Vec::as_slice)
    }

    /// `f_d`, the number of `d`-simplices.
    pub fn face_count(&self, d: usize) -> usize {
        self.faces(d).len()
    }

    /// Boundary map from `d`-simplices to `(d-1)`-simplices; `d = 0` gives
    /// the augmentation onto a single row.
    pub fn boundary(&self, d: usize) -> SparseMatrix {
        let cols = self.faces(d);
        if d == 0 {
            let mut m = SparseMatrix::zeros(1, cols.len());
            for c in 0..cols.len() {
                m.insert(0, c, 1).expect("augmentation entries are distinct");
            }
            return m;
        }
        let rows = self.faces(d - 1);
        let index: HashMap<&[usize], usize> = rows.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
        let mut m = SparseMatrix::zeros(rows.len(), cols.len());
        let mut face = Vec::with_capacity(d);
        for (c, s) in cols.iter().enumerate() {
            for k in 0..s.len() {
                face.clear();
                face.extend(s.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &v)| v));
                let r = index[face.as_slice()];
                let sign = if k % 2 == 0 { 1 } else { -1 };
                m.insert(r, c, sign).expect("faces of a simplex are distinct");
            }
        }
        m
    }

    /// Reduced Betti numbers over `field`, degrees `-1..=dim`.
    pub fn reduced_betti(&self, field: Field) -> BettiVector {
        let top = self.faces.len();
        let ranks: Vec<usize> = (0..top).into_par_iter().map(|d| self.boundary(d).rank(field)).collect();
        let rank = |d: usize| ranks.get(d).copied().unwrap_or(0);
        let mut values = Vec::with_capacity(top + 1);
        values.push(1 - rank(0));
        for d in 0..top {
            values.push(self.face_count(d) - rank(d) - rank(d + 1));
        }
        BettiVector { values }
    }

    /// `Σ (-1)^d f_d`.
    pub fn euler_characteristic(&self) -> i64 {
        self.faces
            .iter()
            .enumerate()
            .map(|(d, f)| if d % 2 == 0 { f.len() as i64 } else { -(f.len() as i64) })
            .sum()
    }
}

fn extend_chains(above: &[Vec<usize>], chain: &mut Vec<usize>, faces: &mut Vec<Vec<Vec<usize>>>) {
    let d = chain.len() - 1;
    if faces.len() <= d {
        faces.resize(d + 1, Vec::new());
    }
    faces[d].push(chain.clone());
    let last = *chain.last().expect("chains are non-empty");
    for &next in &above[last] {
        chain.push(next);
        extend_chains(above, chain, faces);
        chain.pop();
    }
}

/// Reduced Betti numbers indexed from degree `-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiVector {
    values: Vec<usize>,
}

impl BettiVector {
    /// `b̃_degree`, zero outside the stored range.
    pub fn get(&self, degree: isize) -> usize {
        usize::try_from(degree + 1)
            .ok()
            .and_then(|i| self.values.get(i))
            .copied()
            .unwrap_or(0)
    }

    /// `(degree, value)` for every stored degree.
    pub fn iter(&self) -> impl Iterator<Item = (isize, usize)> + '_ {
        self.values.iter().enumerate().map(|(i, &v)| (i as isize - 1, v))
    }

    /// Degrees with a nonzero value.
    pub fn support(&self) -> Vec<isize> {
        self.iter().filter(|&(_, v)| v != 0).map(|(d, _)| d).collect()
    }

    /// `Σ (-1)^i b̃_i`.
    pub fn alternating_sum(&self) -> i64 {
        self.iter()
            .map(|(d, v)| if d.rem_euclid(2) == 0 { v as i64 } else { -(v as i64) })
            .sum()
    }
}

impl fmt::Display for BettiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, (d, v)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{d}:{v}")?;
        }
        f.write_str("]")
    }
}
