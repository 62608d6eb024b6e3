use std::collections::BTreeMap;

use super::tangent::complex_cohomology;
use crate::error::{Error, Result};
use crate::linalg::{axpy_vec, is_zero_vec, Matrix};
use crate::scalar::Scalar;

/// A finite-dimensional differential graded associative algebra in degrees
/// `0..=top`, with products landing above `top` discarded.
///
/// `products[(p, q)][i][j]` is the product of basis vector `i` of degree `p`
/// with basis vector `j` of degree `q`; missing pairs multiply to zero.
#[derive(Clone, Debug, PartialEq)]
pub struct DgAlgebra<F> {
    dims: Vec<usize>,
    d: Vec<Matrix<F>>,
    products: BTreeMap<(usize, usize), Vec<Vec<Vec<F>>>>,
    weights: Option<Vec<Vec<i64>>>,
}

impl<F: Scalar> DgAlgebra<F> {
    pub fn new(
        dims: Vec<usize>,
        d: Vec<Matrix<F>>,
        products: BTreeMap<(usize, usize), Vec<Vec<Vec<F>>>>,
        weights: Option<Vec<Vec<i64>>>,
    ) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidInput("algebra has no degrees".into()));
        }
        let top = dims.len() - 1;
        if d.len() != top {
            return Err(Error::InvalidInput(format!("expected {top} differentials, got {}", d.len())));
        }
        for (n, m) in d.iter().enumerate() {
            if m.nrows() != dims[n + 1] || m.ncols() != dims[n] {
                return Err(Error::InvalidInput(format!("differential {n} has the wrong shape")));
            }
        }
        for (&(p, q), table) in &products {
            if p + q > top {
                return Err(Error::InvalidInput(format!("product ({p},{q}) lands above the top degree")));
            }
            let ok = table.len() == dims[p]
                && table.iter().all(|row| row.len() == dims[q] && row.iter().all(|v| v.len() == dims[p + q]));
            if !ok {
                return Err(Error::InvalidInput(format!("product ({p},{q}) has the wrong shape")));
            }
        }
        if let Some(w) = &weights {
            if w.len() != dims.len() || w.iter().zip(&dims).any(|(w, &n)| w.len() != n) {
                return Err(Error::InvalidInput("weights do not match the dimensions".into()));
            }
        }
        Ok(DgAlgebra { dims, d, products, weights })
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    pub fn differential(&self, n: usize) -> Option<&Matrix<F>> {
        self.d.get(n)
    }

    pub fn weights(&self) -> Option<&[Vec<i64>]> {
        self.weights.as_deref()
    }

    pub fn products(&self) -> &BTreeMap<(usize, usize), Vec<Vec<Vec<F>>>> {
        &self.products
    }

    /// `d` applied to a degree-`n` vector; zero above the top degree.
    pub fn d(&self, n: usize, x: &[F]) -> Vec<F> {
        match self.d.get(n) {
            Some(m) => m.mul_vec(x),
            None => Vec::new(),
        }
    }

    /// Product of basis vectors, or `None` if it lands above the top degree.
    pub fn basis_product(&self, p: usize, i: usize, q: usize, j: usize) -> Option<Vec<F>> {
        if p + q > self.top() {
            return None;
        }
        Some(match self.products.get(&(p, q)) {
            Some(t) => t[i][j].clone(),
            None => vec![F::zero(); self.dims[p + q]],
        })
    }

    pub fn mul(&self, p: usize, x: &[F], q: usize, y: &[F]) -> Option<Vec<F>> {
        if p + q > self.top() {
            return None;
        }
        let mut out = vec![F::zero(); self.dims[p + q]];
        if let Some(t) = self.products.get(&(p, q)) {
            for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
                for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                    axpy_vec(&mut out, &(a.clone() * b.clone()), &t[i][j]);
                }
            }
        }
        Some(out)
    }

    pub fn check_d_squared(&self) -> bool {
        self.d.windows(2).all(|w| w[1].mul(&w[0]).is_zero())
    }

    /// First basis pair violating `d(xy) = dx·y + (-1)^p x·dy`, as `(p, i, q, j)`.
    pub fn leibniz_failure(&self) -> Option<(usize, usize, usize, usize)> {
        let top = self.top();
        for p in 0..=top {
            for q in 0..=top - p {
                if p + q + 1 > top {
                    continue;
                }
                for i in 0..self.dims[p] {
                    let x = unit(self.dims[p], i);
                    let dx = self.d(p, &x);
                    for j in 0..self.dims[q] {
                        let y = unit(self.dims[q], j);
                        let lhs = self.d(p + q, &self.mul(p, &x, q, &y).expect("in range"));
                        let mut rhs = self.mul(p + 1, &dx, q, &y).expect("in range");
                        let mut second = self.mul(p, &x, q + 1, &self.d(q, &y)).expect("in range");
                        if p % 2 == 1 {
                            second.iter_mut().for_each(|c| *c = -c.clone());
                        }
                        axpy_vec(&mut rhs, &F::one(), &second);
                        if lhs != rhs {
                            return Some((p, i, q, j));
                        }
                    }
                }
            }
        }
        None
    }

    /// First basis triple violating associativity, as `(p, i, q, j, r, k)`.
    pub fn associativity_failure(&self) -> Option<(usize, usize, usize, usize, usize, usize)> {
        let top = self.top();
        for p in 0..=top {
            for q in 0..=top - p {
                for r in 0..=top - p - q {
                    for i in 0..self.dims[p] {
                        for j in 0..self.dims[q] {
                            let xy = self.basis_product(p, i, q, j).expect("in range");
                            for k in 0..self.dims[r] {
                                let z = unit(self.dims[r], k);
                                let lhs = self.mul(p + q, &xy, r, &z).expect("in range");
                                let yz = self.basis_product(q, j, r, k).expect("in range");
                                let rhs = self.mul(p, &unit(self.dims[p], i), q + r, &yz).expect("in range");
                                if lhs != rhs {
                                    return Some((p, i, q, j, r, k));
                                }
                            }
                        }
                    }
                }
            }
        }
        None
    }

    /// `dim H^n` for `n < top`.
    pub fn cohomology_dims(&self) -> Vec<usize> {
        complex_cohomology(&self.dims, &self.d)
    }

    /// Whether `d` and the product preserve the weight grading.
    pub fn is_weight_graded(&self) -> bool {
        let Some(w) = &self.weights else { return true };
        for (n, m) in self.d.iter().enumerate() {
            for r in 0..m.nrows() {
                for c in 0..m.ncols() {
                    if !m.get(r, c).is_zero() && w[n + 1][r] != w[n][c] {
                        return false;
                    }
                }
            }
        }
        for (&(p, q), t) in &self.products {
            for (i, row) in t.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    if is_zero_vec(v) {
                        continue;
                    }
                    let target = w[p][i] + w[q][j];
                    if v.iter().enumerate().any(|(k, c)| !c.is_zero() && w[p + q][k] != target) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn unit<F: Scalar>(dim: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); dim];
    v[i] = F::one();
    v
}
