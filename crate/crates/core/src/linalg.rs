//! Exact linear algebra: dense matrices, sparse vectors and an incremental
//! echelon basis with optional combination tracking.

use std::collections::BTreeMap;

use crate::scalar::{axpy, Scalar};

/// Sparse vector keyed by coordinate index; zero entries are never stored.
pub type SparseVec<F> = BTreeMap<usize, F>;

/// `target += c * src`, pruning cancelled entries.
pub fn sparse_axpy<F: Scalar>(target: &mut SparseVec<F>, c: &F, src: &SparseVec<F>) {
    if c.is_zero() {
        return;
    }
    for (k, v) in src {
        let entry = target.entry(*k).or_insert_with(F::zero);
        axpy(entry, c, v);
        if entry.is_zero() {
            target.remove(k);
        }
    }
}

pub fn sparse_scale<F: Scalar>(v: &mut SparseVec<F>, c: &F) {
    if c.is_zero() {
        v.clear();
        return;
    }
    for x in v.values_mut() {
        *x = x.clone() * c.clone();
    }
}

pub fn to_sparse<F: Scalar>(v: &[F]) -> SparseVec<F> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn to_dense<F: Scalar>(v: &SparseVec<F>, dim: usize) -> Vec<F> {
    let mut out = vec![F::zero(); dim];
    for (k, x) in v {
        out[*k] = x.clone();
    }
    out
}

pub fn is_zero_vec<F: Scalar>(v: &[F]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn add_vec<F: Scalar>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn sub_vec<F: Scalar>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn scale_vec<F: Scalar>(c: &F, a: &[F]) -> Vec<F> {
    a.iter().map(|x| c.clone() * x.clone()).collect()
}

pub fn neg_vec<F: Scalar>(a: &[F]) -> Vec<F> {
    a.iter().map(|x| -x.clone()).collect()
}

/// `acc += c * v` on dense vectors.
pub fn axpy_vec<F: Scalar>(acc: &mut [F], c: &F, v: &[F]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        axpy(a, c, x);
    }
}

#[derive(Clone, Debug)]
struct Row<F> {
    vec: SparseVec<F>,
    tag: SparseVec<F>,
}

/// Incremental row-echelon basis of a subspace of `F^n`.
///
/// Rows are keyed by their pivot (lowest nonzero index) and normalised so
/// the pivot entry is one. Each row optionally carries a *tag*: the
/// combination of inserted vectors it equals, which lets callers recover how
/// a reduced vector decomposes over the original generators.
#[derive(Clone, Debug, Default)]
pub struct Echelon<F> {
    rows: BTreeMap<usize, Row<F>>,
}

impl<F: Scalar> Echelon<F> {
    pub fn new() -> Self {
        Echelon { rows: BTreeMap::new() }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn has_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    /// Basis rows in pivot order.
    pub fn basis(&self) -> impl Iterator<Item = &SparseVec<F>> + '_ {
        self.rows.values().map(|r| &r.vec)
    }

    pub fn reduce(&self, v: &SparseVec<F>) -> SparseVec<F> {
        self.reduce_tracked(v).0
    }

    /// Returns `(residue, combination)` with `v = residue + Σ combination_k · input_k`,
    /// where `input_k` are the vectors inserted with tag `e_k`.
    pub fn reduce_tracked(&self, v: &SparseVec<F>) -> (SparseVec<F>, SparseVec<F>) {
        let mut res = v.clone();
        let mut comb = SparseVec::new();
        let mut cursor = 0usize;
        loop {
            let next = res
                .range(cursor..)
                .find(|(c, _)| self.rows.contains_key(c))
                .map(|(c, x)| (*c, x.clone()));
            let Some((col, coef)) = next else { break };
            let row = &self.rows[&col];
            sparse_axpy(&mut res, &-coef.clone(), &row.vec);
            sparse_axpy(&mut comb, &coef, &row.tag);
            cursor = col + 1;
        }
        (res, comb)
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts `v`; returns its new pivot if it was independent.
    pub fn insert(&mut self, v: SparseVec<F>) -> Option<usize> {
        self.insert_tagged(v, SparseVec::new())
    }

    /// Inserts `v`, recording that it equals the combination `tag` of the
    /// caller's generators.
    pub fn insert_tagged(&mut self, v: SparseVec<F>, tag: SparseVec<F>) -> Option<usize> {
        let (mut res, comb) = self.reduce_tracked(&v);
        let (&pivot, lead) = res.iter().next()?;
        let inv = F::one() / lead.clone();
        let mut tag = tag;
        sparse_axpy(&mut tag, &-F::one(), &comb);
        sparse_scale(&mut res, &inv);
        sparse_scale(&mut tag, &inv);
        self.rows.insert(pivot, Row { vec: res, tag });
        Some(pivot)
    }

    /// Back-substitutes so that every pivot column is zero in all other rows.
    pub fn make_reduced(&mut self) {
        let pivots: Vec<usize> = self.rows.keys().rev().copied().collect();
        for p in pivots {
            let prow = self.rows[&p].clone();
            for (_, row) in self.rows.range_mut(..p) {
                if let Some(c) = row.vec.get(&p).cloned() {
                    sparse_axpy(&mut row.vec, &-c.clone(), &prow.vec);
                    sparse_axpy(&mut row.tag, &-c, &prow.tag);
                }
            }
        }
    }

    /// Coordinates of `v` against the (reduced) basis, in pivot order; `None`
    /// if `v` is outside the span.
    pub fn coordinates(&self, v: &SparseVec<F>) -> Option<Vec<F>> {
        let (res, _) = self.reduce_tracked(v);
        if !res.is_empty() {
            return None;
        }
        // With a reduced basis, the coefficient of row p is v[p].
        Some(
            self.rows
                .keys()
                .map(|p| v.get(p).cloned().unwrap_or_else(F::zero))
                .collect(),
        )
    }
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Scalar> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "row length mismatch");
            for (j, x) in row.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: F) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        axpy(&mut acc, a, x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        axpy(&mut out.data[idx], a, b);
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix<F> {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Reduced row echelon form with first-pivot tie-breaking; returns the
    /// reduced matrix and its pivot columns.
    pub fn rref(&self) -> (Matrix<F>, Vec<usize>) {
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
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = F::one() / m.get(r, c).clone();
            for j in 0..m.cols {
                let x = m.get(r, j).clone() * inv.clone();
                m.set(r, j, x);
            }
            let prow: Vec<F> = m.row(r).to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    if !prow[j].is_zero() {
                        let x = m.get(i, j).clone() - f.clone() * prow[j].clone();
                        m.set(i, j, x);
                    }
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

    /// Basis of the kernel, one vector per free column (in column order).
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![F::zero(); self.cols];
            v[free] = F::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(row, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// A particular solution of `self · x = b` with all free variables zero.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows, "dimension mismatch");
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r.get(row, self.cols).clone();
        }
        Some(x)
    }
}
