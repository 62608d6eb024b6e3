//! Finite-dimensional nilpotent Lie algebras given by structure constants.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::lie_core::free::{FreeLieAlgebra, LieElement};
use crate::lie_core::word::Word;
use crate::linalg::{axpy_vec, is_zero_vec, to_sparse, Echelon, Matrix, SparseVec};
use crate::scalar::Scalar;

/// A nilpotent Lie algebra over the scalar field, with structure constants
/// `[e_i, e_j] = Σ_k c_{ij}^k e_k`. Elements are dense coordinate vectors.
///
/// The same vectors double as elements of the group `exp(𝔤)`; see
/// [`NilpotentAlgebra::group_multiply`].
#[derive(Clone)]
pub struct NilpotentAlgebra<F> {
    names: Vec<String>,
    structure: Vec<Vec<SparseVec<F>>>,
    class: usize,
    lcs: Vec<Echelon<F>>,
    bch: Arc<OnceLock<LieElement<F>>>,
}

impl<F: Scalar> fmt::Debug for NilpotentAlgebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NilpotentAlgebra")
            .field("basis", &self.names)
            .field("class", &self.class)
            .finish()
    }
}

impl<F: Scalar> PartialEq for NilpotentAlgebra<F> {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.structure == other.structure
    }
}

impl<F: Scalar> NilpotentAlgebra<F> {
    /// Builds an algebra from the brackets `[e_i, e_j]` for `i < j` (or any
    /// order; a pair given both ways must be antisymmetric). Checks the
    /// Jacobi identity and nilpotency.
    pub fn new(names: Vec<String>, brackets: Vec<(usize, usize, Vec<F>)>) -> Result<Self> {
        let n = names.len();
        let mut given: HashMap<(usize, usize), Vec<F>> = HashMap::new();
        for (i, j, v) in brackets {
            if i >= n || j >= n || v.len() != n {
                return Err(Error::InvalidAlgebra(format!("bracket ({i},{j}) out of range")));
            }
            if i == j {
                if !is_zero_vec(&v) {
                    return Err(Error::InvalidAlgebra(format!("[e{i}, e{i}] must vanish")));
                }
                continue;
            }
            let neg: Vec<F> = v.iter().map(|x| -x.clone()).collect();
            for (key, val) in [((i, j), v), ((j, i), neg)] {
                match given.get(&key) {
                    Some(prev) if *prev != val => {
                        return Err(Error::InvalidAlgebra(format!(
                            "brackets ({},{}) are not antisymmetric",
                            key.0, key.1
                        )));
                    }
                    _ => {
                        given.insert(key, val);
                    }
                }
            }
        }
        let mut structure = vec![vec![SparseVec::new(); n]; n];
        for ((i, j), v) in given {
            structure[i][j] = to_sparse(&v);
        }
        let alg = Self::from_structure(names, structure)?;
        alg.check_jacobi()?;
        Ok(alg)
    }

    /// Trusted constructor for structure constants that are antisymmetric
    /// and satisfy Jacobi by construction (e.g. quotients of free algebras).
    pub(crate) fn from_structure(names: Vec<String>, structure: Vec<Vec<SparseVec<F>>>) -> Result<Self> {
        let mut alg = NilpotentAlgebra {
            names,
            structure,
            class: 0,
            lcs: Vec::new(),
            bch: Arc::new(OnceLock::new()),
        };
        alg.compute_lcs()?;
        Ok(alg)
    }

    pub fn abelian(dim: usize) -> Self {
        let names = (1..=dim).map(|i| format!("e{i}")).collect();
        Self::from_structure(names, vec![vec![SparseVec::new(); dim]; dim]).expect("abelian is nilpotent")
    }

    /// The three-dimensional Heisenberg algebra `[x, y] = z`.
    pub fn heisenberg() -> Self {
        let names = vec!["x".to_string(), "y".to_string(), "z".to_string()];
        Self::new(names, vec![(0, 1, vec![F::zero(), F::zero(), F::one()])]).expect("heisenberg is valid")
    }

    fn compute_lcs(&mut self) -> Result<()> {
        let n = self.dim();
        let mut current = Echelon::new();
        for i in 0..n {
            current.insert(to_sparse(&self.unit(i)));
        }
        let mut lcs = vec![current.clone()];
        loop {
            if current.is_empty() {
                break;
            }
            let mut next = Echelon::new();
            let spanning: Vec<_> = current.basis().cloned().collect();
            for i in 0..n {
                for v in &spanning {
                    let w = self.bracket(&self.unit(i), &crate::linalg::to_dense(v, n));
                    if !is_zero_vec(&w) {
                        next.insert(to_sparse(&w));
                    }
                }
            }
            if next.len() == current.len() {
                return Err(Error::InvalidAlgebra("algebra is not nilpotent".into()));
            }
            lcs.push(next.clone());
            current = next;
        }
        // lcs = [Γ_1, ..., Γ_{c+1} = 0]
        self.class = lcs.len() - 1;
        self.lcs = lcs;
        Ok(())
    }

    fn check_jacobi(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let (ei, ej, ek) = (self.unit(i), self.unit(j), self.unit(k));
                    let a = self.bracket(&ei, &self.bracket(&ej, &ek));
                    let b = self.bracket(&ej, &self.bracket(&ek, &ei));
                    let c = self.bracket(&ek, &self.bracket(&ei, &ej));
                    let s: Vec<F> = (0..n).map(|t| a[t].clone() + b[t].clone() + c[t].clone()).collect();
                    if !is_zero_vec(&s) {
                        return Err(Error::InvalidAlgebra(format!(
                            "Jacobi identity fails on ({}, {}, {})",
                            self.names[i], self.names[j], self.names[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Nilpotency class: `Γ_{class+1} = 0 ≠ Γ_class` (zero for the zero algebra).
    pub fn class(&self) -> usize {
        self.class
    }

    pub fn structure_constant(&self, i: usize, j: usize) -> &SparseVec<F> {
        &self.structure[i][j]
    }

    pub fn zero(&self) -> Vec<F> {
        vec![F::zero(); self.dim()]
    }

    pub fn unit(&self, i: usize) -> Vec<F> {
        let mut v = self.zero();
        v[i] = F::one();
        v
    }

    pub fn bracket(&self, u: &[F], v: &[F]) -> Vec<F> {
        let mut out = self.zero();
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() || i == j {
                    continue;
                }
                let c = ui.clone() * vj.clone();
                for (k, s) in &self.structure[i][j] {
                    crate::scalar::axpy(&mut out[*k], &c, s);
                }
            }
        }
        out
    }

    /// Dimensions of `Γ_n / Γ_{n+1}` for `n = 1..=class`.
    pub fn lcs_dims(&self) -> Vec<usize> {
        self.lcs.windows(2).map(|w| w[0].len() - w[1].len()).collect()
    }

    /// Echelon basis of `Γ_n` (`n ≥ 1`; zero beyond the class).
    pub fn lcs_term(&self, n: usize) -> Echelon<F> {
        self.lcs.get(n - 1).cloned().unwrap_or_else(Echelon::new)
    }

    pub fn in_lcs(&self, v: &[F], n: usize) -> bool {
        if n == 0 {
            return true;
        }
        match self.lcs.get(n - 1) {
            Some(e) => e.contains(&to_sparse(v)),
            None => is_zero_vec(v),
        }
    }

    /// Is the algebra abelian?
    pub fn is_abelian(&self) -> bool {
        self.class <= 1
    }

    /// `e^{ad x} y`.
    pub fn adjoint_exp(&self, x: &[F], y: &[F]) -> Vec<F> {
        let mut out = y.to_vec();
        let mut term = y.to_vec();
        let mut k = 1i64;
        loop {
            term = self.bracket(x, &term);
            if is_zero_vec(&term) {
                break;
            }
            axpy_vec(&mut out, &(F::one() / F::from_int(factorial(k))), &term);
            k += 1;
        }
        out
    }

    /// Group law of `exp(𝔤)` in exponential coordinates: the image of the
    /// Baker–Campbell–Hausdorff element `bch(a, b)` under `a ↦ u, b ↦ v`.
    pub fn group_multiply(&self, u: &[F], v: &[F]) -> Vec<F> {
        if is_zero_vec(u) {
            return v.to_vec();
        }
        if is_zero_vec(v) {
            return u.to_vec();
        }
        if self.is_abelian() {
            return crate::linalg::add_vec(u, v);
        }
        let bch = self.bch.get_or_init(|| {
            let free = FreeLieAlgebra::on_names(&["a", "b"], self.class).expect("class within cap");
            crate::envelope::bch(&free.generator(0), &free.generator(1)).expect("same algebra")
        });
        evaluate_unchecked(bch, self, &[u.to_vec(), v.to_vec()])
    }

    /// Inverse in `exp(𝔤)`: `exp(u)^{-1} = exp(-u)`.
    pub fn group_inverse(&self, u: &[F]) -> Vec<F> {
        u.iter().map(|x| -x.clone()).collect()
    }

    /// Left-to-right product of several group elements.
    pub fn group_product(&self, factors: &[&[F]]) -> Vec<F> {
        factors.iter().fold(self.zero(), |acc, f| self.group_multiply(&acc, f))
    }

    /// Canonical representative of `v` modulo `Γ_n`.
    pub fn reduce_mod_lcs(&self, v: &[F], n: usize) -> Vec<F> {
        if n == 0 {
            return self.zero();
        }
        match self.lcs.get(n - 1) {
            Some(e) => crate::linalg::to_dense(&e.reduce(&to_sparse(v)), self.dim()),
            None => v.to_vec(),
        }
    }

    /// Basis of the center.
    pub fn center(&self) -> Vec<Vec<F>> {
        let n = self.dim();
        let mut m = Matrix::zeros(n * n, n);
        for j in 0..n {
            for i in 0..n {
                let b = self.bracket(&self.unit(j), &self.unit(i));
                for (k, c) in b.into_iter().enumerate() {
                    m.set(i * n + k, j, c);
                }
            }
        }
        m.nullspace()
    }

    /// Quotient by an ideal spanned by `ideal`. Returns the quotient algebra
    /// together with the projection (as a function of coordinates) data: the
    /// retained coordinate indices, and the echelon basis of the ideal.
    pub fn quotient_by_ideal(&self, ideal: &[Vec<F>]) -> Result<(NilpotentAlgebra<F>, Echelon<F>, Vec<usize>)> {
        let mut e = Echelon::new();
        for v in ideal {
            e.insert(to_sparse(v));
        }
        for v in e.basis().cloned().collect::<Vec<_>>() {
            for i in 0..self.dim() {
                let b = self.bracket(&self.unit(i), &crate::linalg::to_dense(&v, self.dim()));
                if !e.contains(&to_sparse(&b)) {
                    return Err(Error::InvalidInput("subspace is not an ideal".into()));
                }
            }
        }
        let kept: Vec<usize> = (0..self.dim()).filter(|i| !e.has_pivot(*i)).collect();
        let mut pos = vec![usize::MAX; self.dim()];
        for (k, i) in kept.iter().enumerate() {
            pos[*i] = k;
        }
        let n = kept.len();
        let mut structure = vec![vec![SparseVec::new(); n]; n];
        for a in 0..n {
            for b in 0..n {
                if a == b {
                    continue;
                }
                let br = self.bracket(&self.unit(kept[a]), &self.unit(kept[b]));
                structure[a][b] = e.reduce(&to_sparse(&br)).into_iter().map(|(i, c)| (pos[i], c)).collect();
            }
        }
        let names = kept.iter().map(|i| self.names[*i].clone()).collect();
        Ok((NilpotentAlgebra::from_structure(names, structure)?, e, kept))
    }

    /// Finds `x` with `exp(x) exp(u_k) exp(-x) = exp(u'_k)` for all `k`, or
    /// certifies that none exists. Solved one lower-central-series stage at a
    /// time; each stage is a linear system on the centralizer of the current
    /// approximation modulo the next term.
    pub fn conjugator(&self, us: &[Vec<F>], targets: &[Vec<F>]) -> Option<Vec<F>> {
        let n = self.dim();
        if us.iter().zip(targets).any(|(u, t)| self.reduce_mod_lcs(&crate::linalg::sub_vec(u, t), 2).iter().any(|c| !c.is_zero())) {
            return None;
        }
        let mut x = self.zero();
        for s in 1..self.class().max(1) {
            let ws: Vec<Vec<F>> = us.iter().map(|u| self.adjoint_exp(&x, u)).collect();
            let stack = |y: &[F], t: usize| -> Vec<F> {
                ws.iter().flat_map(|w| self.reduce_mod_lcs(&self.bracket(y, w), t)).collect()
            };
            let rows = n * ws.len();
            let cols: Vec<Vec<F>> = (0..n).map(|i| stack(&self.unit(i), s + 1)).collect();
            let centralizer = Matrix::from_columns(rows, &cols).nullspace();
            if centralizer.is_empty() {
                if ws.iter().zip(targets).any(|(w, t)| !is_zero_vec(&self.reduce_mod_lcs(&crate::linalg::sub_vec(t, w), s + 2))) {
                    return None;
                }
                continue;
            }
            let cols: Vec<Vec<F>> = centralizer.iter().map(|c| stack(c, s + 2)).collect();
            let t = Matrix::from_columns(rows, &cols);
            let rhs: Vec<F> = ws
                .iter()
                .zip(targets)
                .flat_map(|(w, t)| self.reduce_mod_lcs(&crate::linalg::sub_vec(t, w), s + 2))
                .collect();
            let z = t.solve(&rhs)?;
            let mut y = self.zero();
            for (zb, c) in z.iter().zip(&centralizer) {
                axpy_vec(&mut y, zb, c);
            }
            x = self.group_multiply(&y, &x);
        }
        let ok = us.iter().zip(targets).all(|(u, t)| self.adjoint_exp(&x, u) == *t);
        ok.then_some(x)
    }

    /// Basis names used in printing.
    pub fn format(&self, v: &[F]) -> String {
        let parts: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| format!("{}·{}", x, self.names[i]))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

fn factorial(k: i64) -> i64 {
    (1..=k).product()
}

/// Image of a free Lie element under the homomorphism determined by where the
/// generators go.
pub fn evaluate<F: Scalar>(
    x: &LieElement<F>,
    target: &NilpotentAlgebra<F>,
    assignment: &[Vec<F>],
) -> Result<Vec<F>> {
    if x.class() < target.class() {
        return Err(Error::Mismatch);
    }
    if assignment.len() != x.algebra().rank() || assignment.iter().any(|v| v.len() != target.dim()) {
        return Err(Error::InvalidInput("assignment does not match alphabet and target".into()));
    }
    Ok(evaluate_unchecked(x, target, assignment))
}

pub(crate) fn evaluate_unchecked<F: Scalar>(
    x: &LieElement<F>,
    target: &NilpotentAlgebra<F>,
    assignment: &[Vec<F>],
) -> Vec<F> {
    let mut memo: HashMap<Word, Vec<F>> = HashMap::new();
    let mut out = target.zero();
    for (w, c) in x.terms() {
        if w.len() > target.class().max(1) {
            continue;
        }
        let v = eval_word(*w, target, assignment, &mut memo);
        axpy_vec(&mut out, c, &v);
    }
    out
}

fn eval_word<F: Scalar>(
    w: Word,
    target: &NilpotentAlgebra<F>,
    assignment: &[Vec<F>],
    memo: &mut HashMap<Word, Vec<F>>,
) -> Vec<F> {
    if let Some(v) = memo.get(&w) {
        return v.clone();
    }
    let v = if w.len() == 1 {
        assignment[w.at(0)].clone()
    } else {
        let (u, rest) = w.standard_factorization();
        let a = eval_word(u, target, assignment, memo);
        if is_zero_vec(&a) {
            target.zero()
        } else {
            let b = eval_word(rest, target, assignment, memo);
            target.bracket(&a, &b)
        }
    };
    memo.insert(w, v.clone());
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Q;

    #[test]
    fn heisenberg_lcs() {
        let h = NilpotentAlgebra::<Q>::heisenberg();
        assert_eq!(h.class(), 2);
        assert_eq!(h.lcs_dims(), vec![2, 1]);
        let a = NilpotentAlgebra::<Q>::abelian(3);
        assert_eq!(a.class(), 1);
    }

    #[test]
    fn rejects_bad_structure() {
        let names: Vec<String> = ["x", "y"].iter().map(|s| s.to_string()).collect();
        // [x, y] = x is solvable but not nilpotent.
        let r = NilpotentAlgebra::<Q>::new(names.clone(), vec![(0, 1, vec![Q::from_int(1), Q::from_int(0)])]);
        assert!(matches!(r, Err(Error::InvalidAlgebra(_))));
        let r = NilpotentAlgebra::<Q>::new(
            names,
            vec![(0, 1, vec![Q::from_int(0), Q::from_int(0)]), (1, 0, vec![Q::from_int(1), Q::from_int(0)])],
        );
        assert!(matches!(r, Err(Error::InvalidAlgebra(_))));
    }

    #[test]
    fn jacobi_violation_detected() {
        // [a,b]=d, [b,c]=d, [a,c]=0, [a,d] = e  →  Jacobi on (a,b,c): [a,[b,c]] = e, others 0.
        let names: Vec<String> = ["a", "b", "c", "d", "e"].iter().map(|s| s.to_string()).collect();
        let q = |v: [i64; 5]| v.iter().map(|x| Q::from_int(*x)).collect::<Vec<_>>();
        let r = NilpotentAlgebra::new(
            names,
            vec![(0, 1, q([0, 0, 0, 1, 0])), (1, 2, q([0, 0, 0, 1, 0])), (0, 3, q([0, 0, 0, 0, 1]))],
        );
        assert!(matches!(r, Err(Error::InvalidAlgebra(m)) if m.contains("Jacobi")));
    }

    #[test]
    fn evaluate_examples() {
        let h = NilpotentAlgebra::<Q>::heisenberg();
        let l = FreeLieAlgebra::on_names(&["a", "b"], 3).unwrap();
        let ab: LieElement<Q> = l.basis_element(Word::from_letters(&[0, 1]));
        assert_eq!(evaluate(&ab, &h, &[h.unit(0), h.unit(1)]).unwrap(), h.unit(2));
        let a: LieElement<Q> = l.generator(0);
        let v = vec![Q::from_int(2), Q::from_int(-1), Q::ratio(1, 3)];
        assert_eq!(evaluate(&a, &h, &[v.clone(), h.zero()]).unwrap(), v);
        let ab3 = FreeLieAlgebra::on_names(&["a", "b"], 3).unwrap();
        let aab: LieElement<Q> = ab3.basis_element(Word::from_letters(&[0, 0, 1]));
        let ab1 = NilpotentAlgebra::<Q>::abelian(2);
        assert!(is_zero_vec(&evaluate(&aab, &ab1, &[ab1.unit(0), ab1.unit(1)]).unwrap()));
        let small = FreeLieAlgebra::on_names(&["a", "b"], 1).unwrap();
        assert_eq!(evaluate(&small.generator::<Q>(0), &h, &[h.unit(0), h.unit(1)]), Err(Error::Mismatch));
    }

    #[test]
    fn conjugacy() {
        let h = NilpotentAlgebra::<Q>::heisenberg();
        let u = vec![Q::from_int(1), Q::from_int(2), Q::from_int(0)];
        let v = vec![Q::from_int(0), Q::from_int(1), Q::ratio(1, 3)];
        let x = vec![Q::from_int(2), Q::ratio(-1, 2), Q::from_int(5)];
        let targets = vec![h.adjoint_exp(&x, &u), h.adjoint_exp(&x, &v)];
        let found = h.conjugator(&[u.clone(), v.clone()], &targets).unwrap();
        assert_eq!(h.adjoint_exp(&found, &u), targets[0]);
        assert_eq!(h.adjoint_exp(&found, &v), targets[1]);
        let mut bad = targets.clone();
        bad[0][0] = Q::from_int(7);
        assert!(h.conjugator(&[u.clone(), v.clone()], &bad).is_none());
        // u and 2u can only be conjugated to (u', 2u'); a central shift of one alone is impossible.
        let two_u: Vec<Q> = u.iter().map(|c| c * Q::from_int(2)).collect();
        let mut shifted = two_u.clone();
        shifted[2] = Q::from_int(1);
        assert!(h.conjugator(&[u.clone(), two_u.clone()], &[u.clone(), shifted]).is_none());
    }

    #[test]
    fn center_and_quotient() {
        let h = NilpotentAlgebra::<Q>::heisenberg();
        assert_eq!(h.center(), vec![h.unit(2)]);
        let (q, _, kept) = h.quotient_by_ideal(&[h.unit(2)]).unwrap();
        assert_eq!(kept, vec![0, 1]);
        assert!(q.is_abelian());
        assert!(h.quotient_by_ideal(&[h.unit(0)]).is_err());
    }

    #[test]
    fn heisenberg_group_law() {
        let h = NilpotentAlgebra::<Q>::heisenberg();
        let p = h.group_multiply(&h.unit(0), &h.unit(1));
        assert_eq!(p, vec![Q::from_int(1), Q::from_int(1), Q::ratio(1, 2)]);
        let u = vec![Q::from_int(3), Q::ratio(-2, 5), Q::from_int(7)];
        assert!(is_zero_vec(&h.group_multiply(&u, &h.group_inverse(&u))));
    }
}
