//! Linearisation of an SDC: the tangent cosimplicial complex and the
//! tangent-level Alexander–Whitney algebra.

use std::collections::BTreeMap;

use super::{linear_matrix, DgAlgebra, GroupCochain, Sdc};
use crate::lie_core::NilpotentAlgebra;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// `t_S^n` for `n ≤ top`, in coordinates indexed by the unconstrained slots.
#[derive(Clone, Debug)]
pub struct TangentComplex<F> {
    slots: Vec<Vec<usize>>,
    cofaces: Vec<Vec<Matrix<F>>>,
    codegeneracies: Vec<Vec<Matrix<F>>>,
    differentials: Vec<Matrix<F>>,
}

/// Restricts a slot-indexed matrix to tangent slots on both sides.
fn restrict<F: Scalar>(m: &Matrix<F>, rows: &[usize], cols: &[usize]) -> Matrix<F> {
    let mut out = Matrix::zeros(rows.len(), cols.len());
    for (a, &r) in rows.iter().enumerate() {
        for (b, &c) in cols.iter().enumerate() {
            out.set(a, b, m.get(r, c).clone());
        }
    }
    out
}

impl<F: Scalar> TangentComplex<F> {
    /// Linearises `s` at the one-dimensional abelian algebra, up to level `top`.
    pub fn of(s: &dyn Sdc<F>, top: usize) -> Self {
        let top = top.min(s.max_level());
        let lin = s.with_coefficients(NilpotentAlgebra::abelian(1));
        let lin = lin.as_ref();
        let slots: Vec<Vec<usize>> = (0..=top).map(|n| s.tangent_slots(n)).collect();
        let cofaces: Vec<Vec<Matrix<F>>> = (0..top)
            .map(|n| {
                (0..=n + 1)
                    .map(|i| restrict(&linear_matrix(lin, n, n + 1, |g| lin.coface(i, g)), &slots[n + 1], &slots[n]))
                    .collect()
            })
            .collect();
        let codegeneracies: Vec<Vec<Matrix<F>>> = (0..=top)
            .map(|n| {
                (0..n)
                    .map(|i| {
                        restrict(&linear_matrix(lin, n, n - 1, |g| lin.codegeneracy(i, g)), &slots[n - 1], &slots[n])
                    })
                    .collect()
            })
            .collect();
        let differentials = cofaces
            .iter()
            .enumerate()
            .map(|(n, faces)| {
                let mut d: Matrix<F> = Matrix::zeros(slots[n + 1].len(), slots[n].len());
                for (i, m) in faces.iter().enumerate() {
                    let sign = if i % 2 == 0 { F::one() } else { -F::one() };
                    for r in 0..d.nrows() {
                        for c in 0..d.ncols() {
                            let x = m.get(r, c);
                            if !x.is_zero() {
                                let v = d.get(r, c).clone() + sign.clone() * x.clone();
                                d.set(r, c, v);
                            }
                        }
                    }
                }
                d
            })
            .collect();
        TangentComplex { slots, cofaces, codegeneracies, differentials }
    }

    pub fn top(&self) -> usize {
        self.slots.len() - 1
    }

    pub fn dim(&self, n: usize) -> usize {
        self.slots[n].len()
    }

    /// Slot index of each tangent coordinate at level `n`.
    pub fn slots(&self, n: usize) -> &[usize] {
        &self.slots[n]
    }

    pub fn coface(&self, n: usize, i: usize) -> &Matrix<F> {
        &self.cofaces[n][i]
    }

    pub fn codegeneracy(&self, n: usize, i: usize) -> &Matrix<F> {
        &self.codegeneracies[n][i]
    }

    /// `d = Σ (-1)^i ∂^i` from level `n` to `n+1`.
    pub fn differential(&self, n: usize) -> &Matrix<F> {
        &self.differentials[n]
    }

    pub fn d_squared_zero(&self) -> bool {
        self.differentials.windows(2).all(|w| w[1].mul(&w[0]).is_zero())
    }

    /// `dim H^n` for `n < top`.
    pub fn cohomology_dims(&self) -> Vec<usize> {
        complex_cohomology(&(0..=self.top()).map(|n| self.dim(n)).collect::<Vec<_>>(), &self.differentials)
    }

    /// Normalised cochains at level `n` (common kernel of the codegeneracies),
    /// as column vectors in tangent coordinates.
    pub fn normalized_basis(&self, n: usize) -> Vec<Vec<F>> {
        let dim = self.dim(n);
        if n == 0 {
            return (0..dim).map(|i| unit_vec(dim, i)).collect();
        }
        let rows: Vec<Vec<F>> = self.codegeneracies[n].iter().flat_map(|m| (0..m.nrows()).map(|r| m.row(r).to_vec())).collect();
        if rows.is_empty() {
            return (0..dim).map(|i| unit_vec(dim, i)).collect();
        }
        Matrix::from_rows(dim, &rows).nullspace()
    }

    /// Embeds a tangent vector as a group cochain with values in the given
    /// one-dimensional direction `dir` of the coefficient algebra.
    pub fn to_cochain(&self, s: &dyn Sdc<F>, level: usize, v: &[F], dir: &[F]) -> GroupCochain<F> {
        let mut g = s.unit(level);
        for (c, &slot) in v.iter().zip(&self.slots[level]) {
            if !c.is_zero() {
                g.values[slot] = dir.iter().map(|x| x.clone() * c.clone()).collect();
            }
        }
        g
    }
}

pub(crate) fn unit_vec<F: Scalar>(dim: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); dim];
    v[i] = F::one();
    v
}

/// Cohomology dimensions of `C^0 → C^1 → …` given the differentials; the last
/// degree is omitted since its cocycle space is unknown.
pub(crate) fn complex_cohomology<F: Scalar>(dims: &[usize], d: &[Matrix<F>]) -> Vec<usize> {
    (0..d.len())
        .map(|n| {
            let z = dims[n] - d[n].rank();
            let b = if n == 0 { 0 } else { d[n - 1].rank() };
            z - b
        })
        .collect()
}

/// `dim H^i(S)` for `i ≤ upto`.
pub fn tangent_cohomology<F: Scalar>(s: &dyn Sdc<F>, upto: usize) -> Vec<usize> {
    TangentComplex::of(s, upto + 1).cohomology_dims()
}

/// The cochain algebra `t_S^{≤top}` with the product read off from the SDC
/// product at second order: for `x`, `y` tangent vectors, the Heisenberg
/// lifts `x·ε` and `y·ν` multiply to `x·ε + y·ν + ½ (x ∪ y)·[ε,ν]`.
///
/// With `normalized`, the algebra is the subcomplex of normalised cochains
/// in the basis from [`TangentComplex::normalized_basis`].
pub fn aw_tangent_algebra<F: Scalar>(s: &dyn Sdc<F>, top: usize, normalized: bool) -> (DgAlgebra<F>, Vec<Vec<Vec<F>>>) {
    let t = TangentComplex::of(s, top);
    let top = t.top();
    let bases: Vec<Vec<Vec<F>>> = (0..=top)
        .map(|n| if normalized { t.normalized_basis(n) } else { (0..t.dim(n)).map(|i| unit_vec(t.dim(n), i)).collect() })
        .collect();
    let heis = s.with_coefficients(NilpotentAlgebra::heisenberg());
    let heis = heis.as_ref();
    let eps = vec![F::one(), F::zero(), F::zero()];
    let nu = vec![F::zero(), F::one(), F::zero()];
    let two = F::from_int(2);
    // coordinates of an ambient vector in the chosen basis
    let solvers: Vec<Matrix<F>> = (0..=top).map(|n| Matrix::from_columns(t.dim(n), &bases[n])).collect();
    let coords = |n: usize, v: &[F]| -> Vec<F> {
        solvers[n].solve(v).expect("normalised cochains are closed under the differential and product")
    };
    let d: Vec<Matrix<F>> = (0..top)
        .map(|n| {
            let cols: Vec<Vec<F>> = bases[n].iter().map(|b| coords(n + 1, &t.differential(n).mul_vec(b))).collect();
            Matrix::from_columns(bases[n + 1].len(), &cols)
        })
        .collect();
    let mut products = BTreeMap::new();
    for p in 0..=top {
        for q in 0..=top - p {
            let lifts_p: Vec<GroupCochain<F>> = bases[p].iter().map(|b| t.to_cochain(heis, p, b, &eps)).collect();
            let lifts_q: Vec<GroupCochain<F>> = bases[q].iter().map(|b| t.to_cochain(heis, q, b, &nu)).collect();
            let table: Vec<Vec<Vec<F>>> = lifts_p
                .iter()
                .map(|g| {
                    lifts_q
                        .iter()
                        .map(|h| {
                            let gh = heis.product(g, h);
                            let v: Vec<F> =
                                t.slots(p + q).iter().map(|&slot| gh.values[slot][2].clone() * two.clone()).collect();
                            coords(p + q, &v)
                        })
                        .collect()
                })
                .collect();
            products.insert((p, q), table);
        }
    }
    let dims = bases.iter().map(|b| b.len()).collect();
    let alg = DgAlgebra::new(dims, d, products, None).expect("shapes are consistent by construction");
    (alg, bases)
}
