//! Chevalley–Eilenberg cohomology of a nilpotent Lie algebra in degrees
//! up to two, with cup and Massey triple products.
//!
//! Cochains in `Λ^k N∨` are stored by their values on increasing index
//! tuples `i₁ < … < i_k`. Conventions: `dφ(x,y) = −φ([x,y])` and
//! `dψ(x,y,z) = −ψ([x,y],z) + ψ([x,z],y) − ψ([y,z],x)`.

use crate::error::{Error, Result};
use crate::lie_core::NilpotentAlgebra;
use crate::linalg::{is_zero_vec, to_sparse, Echelon, Matrix};
use crate::scalar::Scalar;

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Debug)]
pub struct CEComplex<F: Scalar> {
    algebra: NilpotentAlgebra<F>,
    bases: Vec<Vec<Vec<usize>>>,
    d: Vec<Matrix<F>>,
}

impl<F: Scalar> CEComplex<F> {
    pub fn new(algebra: &NilpotentAlgebra<F>) -> Self {
        let n = algebra.dim();
        let bases: Vec<Vec<Vec<usize>>> = (0..=3).map(|k| subsets(n, k)).collect();
        let d0 = Matrix::zeros(n, 1);
        let br = |i: usize, j: usize| algebra.bracket(&algebra.unit(i), &algebra.unit(j));
        let mut d1 = Matrix::zeros(bases[2].len(), n);
        for (r, p) in bases[2].iter().enumerate() {
            for (c, v) in br(p[0], p[1]).into_iter().enumerate() {
                d1.set(r, c, -v);
            }
        }
        let pos2 = |i: usize, j: usize| -> (usize, bool) {
            let (a, b, neg) = if i < j { (i, j, false) } else { (j, i, true) };
            (bases[2].iter().position(|p| p[0] == a && p[1] == b).unwrap(), neg)
        };
        let mut d2: Matrix<F> = Matrix::zeros(bases[3].len(), bases[2].len());
        for (r, t) in bases[3].iter().enumerate() {
            let (x, y, z) = (t[0], t[1], t[2]);
            // −ψ([x,y],z) + ψ([x,z],y) − ψ([y,z],x)
            for (sign, u, w) in [(-1, br(x, y), z), (1, br(x, z), y), (-1, br(y, z), x)] {
                for (m, c) in u.into_iter().enumerate() {
                    if c.is_zero() || m == w {
                        continue;
                    }
                    let (col, neg) = pos2(m, w);
                    let s = if neg { -sign } else { sign };
                    let v = d2.get(r, col).clone() + F::from_int(s) * c;
                    d2.set(r, col, v);
                }
            }
        }
        CEComplex { algebra: algebra.clone(), bases, d: vec![d0, d1, d2] }
    }

    pub fn algebra(&self) -> &NilpotentAlgebra<F> {
        &self.algebra
    }

    /// Increasing index tuples indexing `Λ^k N∨`.
    pub fn basis(&self, k: usize) -> &[Vec<usize>] {
        &self.bases[k]
    }

    pub fn dim(&self, k: usize) -> usize {
        self.bases[k].len()
    }

    /// `d_k : Λ^k → Λ^{k+1}` for `k ≤ 2`.
    pub fn differential(&self, k: usize) -> &Matrix<F> {
        &self.d[k]
    }

    pub fn d_squared_zero(&self) -> bool {
        self.d.windows(2).all(|w| w[1].mul(&w[0]).is_zero())
    }

    fn index(&self, k: usize, tuple: &[usize]) -> usize {
        self.bases[k].iter().position(|p| p == tuple).expect("sorted tuple")
    }

    /// `a ∧ b` for `a ∈ Λ^p`, `b ∈ Λ^q`, `p + q ≤ 3`.
    pub fn wedge(&self, p: usize, a: &[F], q: usize, b: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim(p + q)];
        for (i, s) in self.bases[p].iter().enumerate() {
            if a[i].is_zero() {
                continue;
            }
            for (j, t) in self.bases[q].iter().enumerate() {
                if b[j].is_zero() || s.iter().any(|x| t.contains(x)) {
                    continue;
                }
                let mut merged: Vec<usize> = s.iter().chain(t).copied().collect();
                let mut inversions = 0;
                for x in 0..merged.len() {
                    for y in x + 1..merged.len() {
                        if merged[x] > merged[y] {
                            inversions += 1;
                        }
                    }
                }
                merged.sort_unstable();
                let k = self.index(p + q, &merged);
                let c = a[i].clone() * b[j].clone();
                out[k] = if inversions % 2 == 0 { out[k].clone() + c } else { out[k].clone() - c };
            }
        }
        out
    }

    /// Formats a cochain over the dual basis, e.g. `x∨∧z∨ - 2 y∨∧z∨`.
    pub fn format(&self, k: usize, v: &[F]) -> String {
        let names = self.algebra.names();
        let mut out = String::new();
        for (c, t) in v.iter().zip(&self.bases[k]) {
            if c.is_zero() {
                continue;
            }
            let mono: Vec<String> = t.iter().map(|&i| format!("{}∨", names[i])).collect();
            let mono = if mono.is_empty() { "1".to_string() } else { mono.join("∧") };
            let neg = c.to_string().starts_with('-');
            let abs = if neg { -c.clone() } else { c.clone() };
            if out.is_empty() {
                out.push_str(if neg { "-" } else { "" });
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if abs != F::one() {
                out.push_str(&format!("{abs} "));
            }
            out.push_str(&mono);
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }
}

/// Cohomology in degrees 1 and 2 with representatives and class maps.
#[derive(Clone, Debug)]
pub struct CECohomology<F: Scalar> {
    pub complex: CEComplex<F>,
    /// `dim H⁰, H¹, H²`.
    pub dims: [usize; 3],
    /// Cocycles completing a basis of `B^k` to one of `Z^k`.
    pub h1: Vec<Vec<F>>,
    pub h2: Vec<Vec<F>>,
    system1: Matrix<F>,
    system2: Matrix<F>,
}

fn harmonic<F: Scalar>(boundaries: &[Vec<F>], cocycles: &[Vec<F>]) -> Vec<Vec<F>> {
    let mut ech = Echelon::new();
    for b in boundaries {
        ech.insert(to_sparse(b));
    }
    cocycles.iter().filter(|z| ech.insert(to_sparse(z)).is_some()).cloned().collect()
}

pub fn ce_cohomology<F: Scalar>(algebra: &NilpotentAlgebra<F>) -> CECohomology<F> {
    let complex = CEComplex::new(algebra);
    let columns = |m: &Matrix<F>| -> Vec<Vec<F>> { (0..m.ncols()).map(|j| m.column(j)).collect() };
    let b1: Vec<Vec<F>> = columns(complex.differential(0)).into_iter().filter(|v| !is_zero_vec(v)).collect();
    let b2: Vec<Vec<F>> = columns(complex.differential(1));
    let h1 = harmonic(&b1, &complex.differential(1).nullspace());
    let h2 = harmonic(&b2, &complex.differential(2).nullspace());
    let system = |h: &[Vec<F>], b: Vec<Vec<F>>, rows: usize| {
        let mut cols = h.to_vec();
        cols.extend(b);
        Matrix::from_columns(rows, &cols)
    };
    let system1 = system(&h1, b1, complex.dim(1));
    let system2 = system(&h2, b2, complex.dim(2));
    CECohomology { dims: [1, h1.len(), h2.len()], h1, h2, system1, system2, complex }
}

impl<F: Scalar> CECohomology<F> {
    pub fn is_cocycle(&self, k: usize, v: &[F]) -> bool {
        v.len() == self.complex.dim(k) && is_zero_vec(&self.complex.differential(k).mul_vec(v))
    }

    /// Coordinates of a cocycle's class in the `h1` or `h2` basis.
    pub fn class(&self, k: usize, v: &[F]) -> Result<Vec<F>> {
        if !(k == 1 || k == 2) || !self.is_cocycle(k, v) {
            return Err(Error::NotCocycle(format!("degree-{k} cochain")));
        }
        let (sys, h) = if k == 1 { (&self.system1, self.h1.len()) } else { (&self.system2, self.h2.len()) };
        let x = sys.solve(v).ok_or_else(|| Error::Internal("cocycle outside Z ⊕ B".into()))?;
        Ok(x[..h].to_vec())
    }

    /// Representative of an `H¹` class given in the `h1` basis.
    pub fn representative1(&self, class: &[F]) -> Vec<F> {
        let mut v = vec![F::zero(); self.complex.dim(1)];
        for (c, h) in class.iter().zip(&self.h1) {
            crate::linalg::axpy_vec(&mut v, c, h);
        }
        v
    }

    /// `[a] ∪ [b]` in the `h2` basis, for 1-cocycles `a`, `b`.
    pub fn cup(&self, a: &[F], b: &[F]) -> Result<Vec<F>> {
        for v in [a, b] {
            if !self.is_cocycle(1, v) {
                return Err(Error::NotCocycle("cup needs 1-cocycles".into()));
            }
        }
        self.class(2, &self.complex.wedge(1, a, 1, b))
    }

    /// `cup[i][k]` = `h1_i ∪ h1_k` in the `h2` basis.
    pub fn cup_matrix(&self) -> Vec<Vec<Vec<F>>> {
        self.h1
            .iter()
            .map(|a| self.h1.iter().map(|b| self.cup(a, b).expect("harmonic cocycles")).collect())
            .collect()
    }

    /// A cochain `u` with `du = z` for exact `z ∈ Λ²`.
    pub fn bound(&self, z: &[F]) -> Option<Vec<F>> {
        self.complex.differential(1).solve(z)
    }

    /// `⟨a, b, c⟩` for 1-cocycles with `a ∪ b = 0 = b ∪ c`.
    pub fn massey_triple(&self, a: &[F], b: &[F], c: &[F]) -> Result<MasseyCoset<F>> {
        let cx = &self.complex;
        if !is_zero_vec(&self.cup(a, b)?) || !is_zero_vec(&self.cup(b, c)?) {
            return Err(Error::MasseyUndefined("⟨a,b,c⟩ needs a∪b = 0 and b∪c = 0".into()));
        }
        let neg = |v: Vec<F>| v.into_iter().map(|x| -x).collect::<Vec<_>>();
        let u = self.bound(&neg(cx.wedge(1, a, 1, b))).ok_or_else(|| Error::Internal("a∧b not exact".into()))?;
        let v = self.bound(&neg(cx.wedge(1, b, 1, c))).ok_or_else(|| Error::Internal("b∧c not exact".into()))?;
        self.massey_with(a, c, &u, &v)
    }

    /// `⟨a, b, c⟩` from the given bounding cochains `du = −a∧b`, `dv = −b∧c`.
    pub fn massey_with(&self, a: &[F], c: &[F], u: &[F], v: &[F]) -> Result<MasseyCoset<F>> {
        let cx = &self.complex;
        let rep = crate::linalg::add_vec(&cx.wedge(1, a, 1, v), &cx.wedge(1, u, 1, c));
        let class = self.class(2, &rep)?;
        let mut ech = Echelon::new();
        for h in &self.h1 {
            for x in [self.cup(a, h)?, self.cup(h, c)?] {
                ech.insert(to_sparse(&x));
            }
        }
        let vanishes = ech.contains(&to_sparse(&class));
        let indeterminacy = ech.basis().map(|s| crate::linalg::to_dense(s, self.h2.len())).collect();
        Ok(MasseyCoset { representative: rep, class, indeterminacy, vanishes })
    }
}

/// A Massey product as a coset `class + indeterminacy` in `H²`.
#[derive(Clone, Debug, PartialEq)]
pub struct MasseyCoset<F> {
    /// Cocycle in `Λ²`.
    pub representative: Vec<F>,
    /// Its class in the `h2` basis.
    pub class: Vec<F>,
    /// Basis of `a ∪ H¹ + H¹ ∪ c` in the `h2` basis.
    pub indeterminacy: Vec<Vec<F>>,
    /// Whether the coset contains zero.
    pub vanishes: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ObstructionReport<F> {
    pub verdict: &'static str,
    /// Indices into the `h1` basis and the offending coset.
    pub witness: Option<([usize; 3], MasseyCoset<F>)>,
    /// Triples satisfying the vanishing hypotheses that were examined.
    pub triples_checked: usize,
}

pub const NOT_QUADRATIC: &str = "not quadratically presentable";
pub const NO_OBSTRUCTION: &str = "no obstruction found";

/// Looks for a basis triple of `H¹` with a nonvanishing Massey product.
pub fn quadratic_obstruction_report<F: Scalar>(algebra: &NilpotentAlgebra<F>) -> ObstructionReport<F> {
    let h = ce_cohomology(algebra);
    let n = h.h1.len();
    let mut checked = 0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if let Ok(m) = h.massey_triple(&h.h1[i], &h.h1[j], &h.h1[k]) {
                    checked += 1;
                    if !m.vanishes {
                        return ObstructionReport { verdict: NOT_QUADRATIC, witness: Some(([i, j, k], m)), triples_checked: checked };
                    }
                }
            }
        }
    }
    ObstructionReport { verdict: NO_OBSTRUCTION, witness: None, triples_checked: checked }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Q;

    fn q(n: i64) -> Q {
        Q::from_int(n)
    }

    #[test]
    fn small_algebras() {
        let ab = ce_cohomology(&NilpotentAlgebra::<Q>::abelian(2));
        assert_eq!(ab.dims, [1, 2, 1]);
        let x = vec![q(1), q(0)];
        let y = vec![q(0), q(1)];
        assert_eq!(ab.cup(&x, &y).unwrap(), vec![q(1)]);
        assert_eq!(ab.cup(&x, &x).unwrap(), vec![q(0)]);

        let heis = ce_cohomology(&NilpotentAlgebra::<Q>::heisenberg());
        assert_eq!(heis.dims, [1, 2, 2]);
        assert!(heis.complex.d_squared_zero());
        let z = vec![q(0), q(0), q(1)];
        assert_eq!(heis.complex.differential(1).mul_vec(&z), vec![q(-1), q(0), q(0)]);
        for row in heis.cup_matrix() {
            for c in row {
                assert!(is_zero_vec(&c));
            }
        }
    }

    #[test]
    fn wedge_is_graded_commutative_and_leibniz() {
        let mut names = vec![];
        let mut br = vec![];
        for s in ["a", "b", "c", "ab", "ac", "bc"] {
            names.push(s.to_string());
        }
        br.push((0, 1, vec![q(0), q(0), q(0), q(1), q(0), q(0)]));
        br.push((0, 2, vec![q(0), q(0), q(0), q(0), q(1), q(0)]));
        br.push((1, 2, vec![q(0), q(0), q(0), q(0), q(0), q(1)]));
        let n = NilpotentAlgebra::new(names, br).unwrap();
        let cx = CEComplex::new(&n);
        assert!(cx.d_squared_zero());
        let e = |k: usize, i: usize| {
            let mut v = vec![q(0); cx.dim(k)];
            v[i] = q(1);
            v
        };
        for i in 0..cx.dim(1) {
            for j in 0..cx.dim(1) {
                let (a, b) = (e(1, i), e(1, j));
                let ab = cx.wedge(1, &a, 1, &b);
                let ba = cx.wedge(1, &b, 1, &a);
                assert_eq!(ab, ba.iter().map(|x| -x.clone()).collect::<Vec<_>>());
                // d(a∧b) = da∧b − a∧db
                let lhs = cx.differential(2).mul_vec(&ab);
                let da = cx.differential(1).mul_vec(&a);
                let db = cx.differential(1).mul_vec(&b);
                let rhs = crate::linalg::sub_vec(&cx.wedge(2, &da, 1, &b), &cx.wedge(1, &a, 2, &db));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn heisenberg_massey() {
        let heis = ce_cohomology(&NilpotentAlgebra::<Q>::heisenberg());
        let x = vec![q(1), q(0), q(0)];
        let y = vec![q(0), q(1), q(0)];
        let m = heis.massey_triple(&x, &x, &y).unwrap();
        assert!(!m.vanishes);
        assert!(m.indeterminacy.is_empty());
        assert_eq!(heis.complex.format(2, &m.representative), "x∨∧z∨");
        let r = quadratic_obstruction_report(&NilpotentAlgebra::<Q>::heisenberg());
        assert_eq!(r.verdict, NOT_QUADRATIC);
        assert_eq!(r.witness.unwrap().0, [0, 0, 1]);
        assert_eq!(quadratic_obstruction_report(&NilpotentAlgebra::<Q>::abelian(3)).verdict, NO_OBSTRUCTION);
    }

    #[test]
    fn massey_hypotheses_checked() {
        let ab = ce_cohomology(&NilpotentAlgebra::<Q>::abelian(2));
        let x = vec![q(1), q(0)];
        let y = vec![q(0), q(1)];
        assert!(matches!(ab.massey_triple(&x, &y, &x), Err(Error::MasseyUndefined(_))));
        assert!(ab.massey_triple(&x, &x, &x).unwrap().vanishes);
        assert!(matches!(ab.cup(&[q(1)], &y), Err(Error::NotCocycle(_))));
    }
}
