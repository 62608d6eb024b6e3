use crate::error::{Error, Result};
use crate::linalg::{is_zero_vec, to_sparse, Echelon, Matrix};
use crate::scalar::Scalar;
use crate::sdc::{DgAlgebra, TangentComplex};

/// Splitting data for degrees 1 and 2 of a pointed cochain complex.
///
/// Vectors live in an ambient coordinate space per degree; the complex
/// itself is the span of the `n*` bases (normalised cochains for SDC inputs).
/// Harmonic representatives are the first basis extension of the
/// coboundaries to the cocycles, in order.
#[derive(Clone, Debug)]
pub struct ContractionData<F> {
    pub h1: Vec<Vec<F>>,
    pub h2: Vec<Vec<F>>,
    n1: Vec<Vec<F>>,
    d0: Matrix<F>,
    d1: Matrix<F>,
    d2: Option<Matrix<F>>,
    system1: Matrix<F>,
    system2: Matrix<F>,
}

fn cocycles<F: Scalar>(basis: &[Vec<F>], d: Option<&Matrix<F>>, ambient: usize) -> Vec<Vec<F>> {
    let Some(d) = d else { return basis.to_vec() };
    if basis.is_empty() {
        return Vec::new();
    }
    let images: Vec<Vec<F>> = basis.iter().map(|b| d.mul_vec(b)).collect();
    let m = Matrix::from_columns(d.nrows(), &images);
    m.nullspace()
        .into_iter()
        .map(|coef| {
            let mut v = vec![F::zero(); ambient];
            for (c, b) in coef.iter().zip(basis) {
                if !c.is_zero() {
                    crate::linalg::axpy_vec(&mut v, c, b);
                }
            }
            v
        })
        .collect()
}

fn extend<F: Scalar>(boundaries: &[Vec<F>], cocycles: &[Vec<F>]) -> Vec<Vec<F>> {
    let mut ech = Echelon::new();
    for b in boundaries {
        ech.insert(to_sparse(b));
    }
    cocycles.iter().filter(|z| ech.insert(to_sparse(z)).is_some()).cloned().collect()
}

impl<F: Scalar> ContractionData<F> {
    /// `n0`, `n1`, `n2` span the complex in ambient coordinates; `d0`, `d1`,
    /// `d2` are ambient differentials (`d2` absent when degree 3 is zero).
    pub fn new(
        n0: &[Vec<F>],
        n1: &[Vec<F>],
        n2: &[Vec<F>],
        d0: Matrix<F>,
        d1: Matrix<F>,
        d2: Option<Matrix<F>>,
    ) -> Result<Self> {
        let b1: Vec<Vec<F>> = n0.iter().map(|v| d0.mul_vec(v)).collect();
        let rank0 = if b1.is_empty() { 0 } else { Matrix::from_columns(d0.nrows(), &b1).rank() };
        if rank0 != n0.len() {
            return Err(Error::NotPointed);
        }
        let z1 = cocycles(n1, Some(&d1), d1.ncols());
        let h1 = extend(&b1, &z1);
        let b2: Vec<Vec<F>> = n1.iter().map(|v| d1.mul_vec(v)).collect();
        let z2 = cocycles(n2, d2.as_ref(), d1.nrows());
        let h2 = extend(&b2, &z2);
        let mut cols1 = h1.clone();
        cols1.extend(b1);
        let mut cols2 = h2.clone();
        cols2.extend(b2);
        Ok(ContractionData {
            system1: Matrix::from_columns(d0.nrows(), &cols1),
            system2: Matrix::from_columns(d1.nrows(), &cols2),
            h1,
            h2,
            n1: n1.to_vec(),
            d0,
            d1,
            d2,
        })
    }

    /// From the normalised part of a tangent complex with `top ≥ 2`.
    pub fn from_tangent(t: &TangentComplex<F>) -> Result<Self> {
        let d2 = (t.top() >= 3).then(|| t.differential(2).clone());
        Self::new(
            &t.normalized_basis(0),
            &t.normalized_basis(1),
            &t.normalized_basis(2),
            t.differential(0).clone(),
            t.differential(1).clone(),
            d2,
        )
    }

    pub fn from_dga(a: &DgAlgebra<F>) -> Result<Self> {
        let unit = |n: usize| -> Vec<Vec<F>> {
            (0..a.dim(n))
                .map(|i| {
                    let mut v = vec![F::zero(); a.dim(n)];
                    v[i] = F::one();
                    v
                })
                .collect()
        };
        let d = |n: usize| a.differential(n).cloned().unwrap_or_else(|| Matrix::zeros(a.dim(n + 1), a.dim(n)));
        Self::new(&unit(0), &unit(1), &unit(2), d(0), d(1), a.differential(2).cloned())
    }

    pub fn h1_dim(&self) -> usize {
        self.h1.len()
    }

    pub fn h2_dim(&self) -> usize {
        self.h2.len()
    }

    pub fn d0(&self) -> &Matrix<F> {
        &self.d0
    }

    pub fn d1(&self) -> &Matrix<F> {
        &self.d1
    }

    pub fn is_cocycle1(&self, v: &[F]) -> bool {
        v.len() == self.d1.ncols() && is_zero_vec(&self.d1.mul_vec(v))
    }

    pub fn is_cocycle2(&self, z: &[F]) -> bool {
        z.len() == self.d1.nrows() && self.d2.as_ref().is_none_or(|d| is_zero_vec(&d.mul_vec(z)))
    }

    /// Class of a 1-cocycle in the `h1` basis.
    pub fn class1(&self, v: &[F]) -> Result<Vec<F>> {
        if !self.is_cocycle1(v) {
            return Err(Error::NotCocycle("degree-1 cochain".into()));
        }
        let x = self.system1.solve(v).ok_or_else(|| Error::NotCocycle("degree-1 cochain outside the complex".into()))?;
        Ok(x[..self.h1.len()].to_vec())
    }

    /// `z = Σ κ_j h2_j + d η` for a 2-cocycle `z`; returns `(κ, η)` with `η`
    /// in ambient degree-1 coordinates.
    pub fn decompose2(&self, z: &[F]) -> Result<(Vec<F>, Vec<F>)> {
        if !self.is_cocycle2(z) {
            return Err(Error::NotCocycle("degree-2 cochain".into()));
        }
        let x = self.system2.solve(z).ok_or_else(|| Error::NotCocycle("degree-2 cochain outside the complex".into()))?;
        let s = self.h2.len();
        let mut eta = vec![F::zero(); self.d1.ncols()];
        for (c, b) in x[s..].iter().zip(&self.n1) {
            if !c.is_zero() {
                crate::linalg::axpy_vec(&mut eta, c, b);
            }
        }
        Ok((x[..s].to_vec(), eta))
    }

    pub fn class2(&self, z: &[F]) -> Result<Vec<F>> {
        Ok(self.decompose2(z)?.0)
    }
}
