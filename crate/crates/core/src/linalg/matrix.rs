use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use super::Field;
use crate::error::{Error, Result};

/// Column-major sparse integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    /// Per column, `(row, value)` sorted by row, no zeros.
    columns: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    /// Build from `(row, col, value)` triples; zeros are dropped.
    pub fn from_triplets(rows: usize, cols: usize, entries: &[(usize, usize, i64)]) -> Result<Self> {
        let mut m = SparseMatrix::zeros(rows, cols);
        for &(r, c, v) in entries {
            m.insert(r, c, v)?;
        }
        Ok(m)
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = SparseMatrix::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::MatrixEntry { row: r, col: row.len() });
            }
            for (c, &v) in row.iter().enumerate() {
                m.insert(r, c, v)?;
            }
        }
        Ok(m)
    }

    pub fn insert(&mut self, row: usize, col: usize, value: i64) -> Result<()> {
        if row >= self.rows || col >= self.cols {
            return Err(Error::MatrixEntry { row, col });
        }
        let column = &mut self.columns[col];
        match column.binary_search_by_key(&row, |&(r, _)| r) {
            Ok(_) => Err(Error::MatrixEntry { row, col }),
            Err(at) => {
                if value != 0 {
                    column.insert(at, (row, value));
                }
                Ok(())
            }
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.columns[col]
            .binary_search_by_key(&row, |&(r, _)| r)
            .map_or(0, |i| self.columns[col][i].1)
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut t = SparseMatrix::zeros(self.cols, self.rows);
        for (c, column) in self.columns.iter().enumerate() {
            for &(r, v) in column {
                t.columns[r].push((c, v));
            }
        }
        t
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0; self.cols]; self.rows];
        for (c, column) in self.columns.iter().enumerate() {
            for &(r, v) in column {
                d[r][c] = v;
            }
        }
        d
    }

    /// Exact rank over `field`.
    pub fn rank(&self, field: Field) -> usize {
        match field {
            Field::Prime(p) => self.rank_mod(p as u64),
            Field::Rationals => self.rank_integer::<i128>().unwrap_or_else(|| {
                self.rank_integer::<BigInt>()
                    .expect("big-integer elimination cannot overflow")
            }),
        }
    }

    /// Column reduction keyed by each column's lowest nonzero row.
    fn rank_mod(&self, p: u64) -> usize {
        let mut pivots: Vec<Option<Vec<(usize, u64)>>> = vec![None; self.rows];
        let mut rank = 0;
        for column in &self.columns {
            let mut col: Vec<(usize, u64)> = column
                .iter()
                .map(|&(r, v)| (r, v.rem_euclid(p as i64) as u64))
                .filter(|&(_, v)| v != 0)
                .collect();
            while let Some(&(low, lv)) = col.last() {
                let Some(pivot) = &pivots[low] else { break };
                let pv = pivot.last().expect("stored pivots are nonzero").1;
                let factor = lv * mod_inverse(pv, p) % p;
                col = axpy_mod(&col, pivot, p - factor, p);
            }
            if let Some(&(low, _)) = col.last() {
                pivots[low] = Some(col);
                rank += 1;
            }
        }
        rank
    }

    /// Fraction-free column reduction; `None` on overflow of the scalar type.
    fn rank_integer<T: Exact>(&self) -> Option<usize> {
        let mut pivots: Vec<Option<Vec<(usize, T)>>> = vec![None; self.rows];
        let mut rank = 0;
        for column in &self.columns {
            let mut col: Vec<(usize, T)> = column.iter().map(|&(r, v)| (r, T::from_i64(v))).collect();
            while let Some((low, lv)) = col.last().cloned() {
                let Some(pivot) = &pivots[low] else { break };
                let pv = pivot.last().expect("stored pivots are nonzero").1.clone();
                col = combine(&col, &lv, pivot, &pv)?;
                normalize(&mut col);
            }
            if let Some(&(low, _)) = col.last() {
                pivots[low] = Some(col);
                rank += 1;
            }
        }
        Some(rank)
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut result, mut base, mut exp) = (1u64, a % p, p - 2);
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    result
}

/// `x + k * y` over `GF(p)`.
fn axpy_mod(x: &[(usize, u64)], y: &[(usize, u64)], k: u64, p: u64) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let (row, v) = match (x.get(i), y.get(j)) {
            (Some(&(rx, vx)), Some(&(ry, _))) if rx < ry => {
                i += 1;
                (rx, vx)
            }
            (Some(&(rx, _)), Some(&(ry, vy))) if ry < rx => {
                j += 1;
                (ry, k * vy % p)
            }
            (Some(&(rx, vx)), Some(&(_, vy))) => {
                i += 1;
                j += 1;
                (rx, (vx + k * vy) % p)
            }
            (Some(&(rx, vx)), None) => {
                i += 1;
                (rx, vx)
            }
            (None, Some(&(ry, vy))) => {
                j += 1;
                (ry, k * vy % p)
            }
            (None, None) => unreachable!(),
        };
        if v != 0 {
            out.push((row, v));
        }
    }
    out
}

pub(crate) trait Exact: Clone + Integer + Signed {
    fn from_i64(v: i64) -> Self;
    /// `a * x - b * y`, or `None` on overflow.
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
}

impl Exact for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }

    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
}

impl Exact for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }

    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }
}

/// `pv * col - lv * pivot`, which cancels the shared lowest entry.
fn combine<T: Exact>(col: &[(usize, T)], lv: &T, pivot: &[(usize, T)], pv: &T) -> Option<Vec<(usize, T)>> {
    let zero = T::zero();
    let mut out = Vec::with_capacity(col.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < col.len() || j < pivot.len() {
        let ri = col.get(i).map_or(usize::MAX, |e| e.0);
        let rj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        let row = ri.min(rj);
        let x = if ri == row {
            i += 1;
            &col[i - 1].1
        } else {
            &zero
        };
        let y = if rj == row {
            j += 1;
            &pivot[j - 1].1
        } else {
            &zero
        };
        let v = T::mul_sub(pv, x, lv, y)?;
        if !v.is_zero() {
            out.push((row, v));
        }
    }
    Some(out)
}

fn normalize<T: Exact>(col: &mut [(usize, T)]) {
    let mut g = T::zero();
    for (_, v) in col.iter() {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    if !g.is_zero() {
        for (_, v) in col.iter_mut() {
            *v = v.div_floor(&g);
        }
    }
}
