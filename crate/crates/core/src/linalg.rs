//! Exact linear algebra over a [`Field`]: sparse row echelon forms, ranks
//! and kernels, plus a small dense matrix type for coordinate changes and
//! alternating matrices.

use std::collections::HashMap;

use crate::field::Field;

/// Sparse vector: strictly increasing indices, nonzero values.
pub type SparseVec<K> = Vec<(usize, K)>;

/// `a + c * b` for sparse vectors.
pub fn sparse_axpy<K: Field>(a: &[(usize, K)], c: &K, b: &[(usize, K)]) -> SparseVec<K> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            let v = c.clone() * b[j].1.clone();
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = a[i].1.clone() + c.clone() * b[j].1.clone();
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Collects `(index, value)` pairs with possible repeats into a sparse vector.
pub fn sparse_from_unsorted<K: Field>(mut entries: Vec<(usize, K)>) -> SparseVec<K> {
    entries.sort_by_key(|e| e.0);
    let mut out: SparseVec<K> = Vec::with_capacity(entries.len());
    for (i, v) in entries {
        match out.last_mut() {
            Some(last) if last.0 == i => last.1 = last.1.clone() + v,
            _ => out.push((i, v)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}

pub fn sparse_scale<K: Field>(v: &[(usize, K)], c: &K) -> SparseVec<K> {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, c.clone() * x.clone())).collect()
}

/// Incrementally built row echelon basis of a subspace.
///
/// Every stored row is monic at its pivot, which is its smallest index.
/// Rows are not back-substituted.
#[derive(Clone, Debug)]
pub struct EchelonBasis<K> {
    rows: Vec<SparseVec<K>>,
    pivots: HashMap<usize, usize>,
}

impl<K: Field> Default for EchelonBasis<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Field> EchelonBasis<K> {
    pub fn new() -> Self {
        EchelonBasis { rows: Vec::new(), pivots: HashMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivots.contains_key(&col)
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Reduces `v` until its leading index is not a pivot (or it vanishes).
    pub fn reduce_leading(&self, mut v: SparseVec<K>) -> SparseVec<K> {
        while let Some((col, c)) = v.first() {
            match self.pivots.get(col) {
                Some(&r) => {
                    let c = -c.clone();
                    v = sparse_axpy(&v, &c, &self.rows[r]);
                }
                None => break,
            }
        }
        v
    }

    /// Full reduction: no index of the result is a pivot.
    pub fn reduce_full(&self, v: SparseVec<K>) -> SparseVec<K> {
        let mut done: SparseVec<K> = Vec::new();
        let mut rest = v;
        loop {
            rest = self.reduce_leading(rest);
            if rest.is_empty() {
                return done;
            }
            let head = rest.remove(0);
            done.push(head);
        }
    }

    pub fn contains(&self, v: SparseVec<K>) -> bool {
        self.reduce_leading(v).is_empty()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec<K>) -> bool {
        let v = self.reduce_leading(v);
        match v.first() {
            None => false,
            Some((col, c)) => {
                let inv = c.inv().expect("nonzero leading entry");
                let col = *col;
                let v = sparse_scale(&v, &inv);
                self.pivots.insert(col, self.rows.len());
                self.rows.push(v);
                true
            }
        }
    }
}

pub fn rank<K: Field>(rows: impl IntoIterator<Item = SparseVec<K>>) -> usize {
    let mut basis = EchelonBasis::new();
    for r in rows {
        basis.insert(r);
    }
    basis.rank()
}

/// Left kernel of a list of rows: all coefficient vectors `x` (indexed by
/// row number) with `sum x_i row_i = 0`, as a basis.
pub fn left_kernel<K: Field>(rows: &[SparseVec<K>], ncols: usize) -> Vec<SparseVec<K>> {
    let mut basis: EchelonBasis<K> = EchelonBasis::new();
    let mut kernel = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let mut tagged = r.clone();
        tagged.push((ncols + i, K::one()));
        let reduced = basis.reduce_leading(tagged);
        match reduced.first() {
            Some((col, _)) if *col >= ncols => {
                kernel.push(reduced.iter().map(|(j, c)| (j - ncols, c.clone())).collect());
            }
            Some(_) => {
                basis.insert(reduced);
            }
            None => unreachable!("tag column cannot cancel"),
        }
    }
    kernel
}

/// Small dense matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<K> {
    rows: usize,
    cols: usize,
    data: Vec<K>,
}

impl<K: Field> Matrix<K> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![K::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, K::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<K>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &K {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: K) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[K] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.get(i, j).clone() + a.clone() * rhs.get(k, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in 0..m.cols {
                let v = m.get(r, j).clone() * inv.clone();
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in 0..m.cols {
                    let v = m.get(i, j).clone() - f.clone() * m.get(r, j).clone();
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Determinant by elimination; square matrices only.
    pub fn det(&self) -> K {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let mut det = K::one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                return K::zero();
            };
            if p != c {
                m.swap_rows(c, p);
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det = det * pivot.clone();
            let inv = pivot.inv().expect("nonzero pivot");
            for i in c + 1..m.rows {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone() * inv.clone();
                for j in c..m.cols {
                    let v = m.get(i, j).clone() - f.clone() * m.get(c, j).clone();
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, K::one());
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, red.get(i, n + j).clone());
            }
        }
        Some(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn sparse_rows(&self) -> Vec<SparseVec<K>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(j, v)| (j, v.clone()))
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Q};

    fn q(v: i64) -> Q {
        <Q as Field>::from_i64(v)
    }

    fn qm(rows: &[&[i64]]) -> Matrix<Q> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect())
    }

    #[test]
    fn axpy_cancels_entries() {
        let a = vec![(0, q(1)), (2, q(3))];
        let b = vec![(2, q(1)), (5, q(1))];
        assert_eq!(sparse_axpy(&a, &q(-3), &b), vec![(0, q(1)), (5, q(-3))]);
    }

    #[test]
    fn echelon_rank_and_membership() {
        let mut b = EchelonBasis::<Q>::new();
        assert!(b.insert(vec![(0, q(1)), (1, q(1))]));
        assert!(b.insert(vec![(1, q(1)), (2, q(1))]));
        assert!(!b.insert(vec![(0, q(1)), (2, q(-1))]));
        assert_eq!(b.rank(), 2);
        assert!(b.contains(vec![(0, q(2)), (1, q(4)), (2, q(2))]));
        assert!(!b.contains(vec![(2, q(1))]));
    }

    #[test]
    fn left_kernel_of_dependent_rows() {
        let rows = vec![vec![(0, q(1)), (1, q(2))], vec![(0, q(2)), (1, q(4))], vec![(1, q(1))]];
        let k = left_kernel(&rows, 2);
        assert_eq!(k.len(), 1);
        // verify the combination vanishes
        let mut acc: SparseVec<Q> = Vec::new();
        for (i, c) in &k[0] {
            acc = sparse_axpy(&acc, c, &rows[*i]);
        }
        assert!(acc.is_empty());
    }

    #[test]
    fn dense_inverse_and_det() {
        let m = qm(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert_eq!(m.det(), q(1));
        assert!(qm(&[&[1, 2], &[2, 4]]).inverse().is_none());
        assert_eq!(qm(&[&[0, 1], &[1, 0]]).det(), q(-1));
    }

    #[test]
    fn rank_over_prime_field_can_drop() {
        let rows = vec![vec![1i64, 1], vec![1, 8]];
        let over_q = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect());
        let over_f7 = Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&v| Fp::<7>::new(v)).collect()).collect(),
        );
        assert_eq!(over_q.rank(), 2);
        assert_eq!(over_f7.rank(), 1);
    }
}
