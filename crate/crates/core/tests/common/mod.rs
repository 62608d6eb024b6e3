//! Independent oracles shared by the integration tests. Nothing here goes
//! through the library's Lie bases or linear algebra.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use malcev_core::lie_core::Word;
use malcev_core::local_systems::{pointed_sdc, Representation, SimplicialSetFin};
use malcev_core::sdc::GroupCochain;
use malcev_core::{LieElement, NilpotentAlgebra, Scalar, Q};
use num_traits::{One, Zero};

/// Noncommutative polynomials over ℚ in letters `0..k`.
pub type Poly = BTreeMap<Vec<u8>, Q>;

pub fn letter(i: u8) -> Poly {
    Poly::from([(vec![i], Q::one())])
}

pub fn add(a: &Poly, b: &Poly, c: &Q) -> Poly {
    let mut out = a.clone();
    for (w, x) in b {
        let e = out.entry(w.clone()).or_insert_with(Q::zero);
        *e += x * c;
        if e.is_zero() {
            out.remove(w);
        }
    }
    out
}

pub fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (u, x) in a {
        for (v, y) in b {
            let mut w = u.clone();
            w.extend(v);
            let e = out.entry(w.clone()).or_insert_with(Q::zero);
            *e += x * y;
            if e.is_zero() {
                out.remove(&w);
            }
        }
    }
    out
}

pub fn commutator(a: &Poly, b: &Poly) -> Poly {
    add(&mul(a, b), &mul(b, a), &-Q::one())
}

/// Rank of a family of polynomials by plain Gaussian elimination.
pub fn rank(polys: &[Poly]) -> usize {
    let mut cols: HashMap<Vec<u8>, usize> = HashMap::new();
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for p in polys {
        for w in p.keys() {
            let n = cols.len();
            cols.entry(w.clone()).or_insert(n);
        }
    }
    for p in polys {
        let mut r = vec![Q::zero(); cols.len()];
        for (w, c) in p {
            r[cols[w]] = c.clone();
        }
        rows.push(r);
    }
    let mut rank = 0;
    for col in 0..cols.len() {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(rank, piv);
        let inv = Q::one() / rows[rank][col].clone();
        let pivot_row: Vec<Q> = rows[rank].iter().map(|x| x * &inv).collect();
        for r in rank + 1..rows.len() {
            let f = rows[r][col].clone();
            if !f.is_zero() {
                for (x, p) in rows[r].iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rank
}

/// All right-normed brackets `[x_{i1},[x_{i2},…,x_{in}]]` of length `n`.
pub fn right_normed(k: u8, n: usize) -> Vec<Poly> {
    if n == 1 {
        return (0..k).map(letter).collect();
    }
    let shorter = right_normed(k, n - 1);
    (0..k).flat_map(|i| shorter.iter().map(move |p| commutator(&letter(i), p))).collect()
}

/// `dim L_n` of the free Lie algebra on `k` letters, by brute force.
pub fn free_dim_oracle(k: u8, n: usize) -> usize {
    rank(&right_normed(k, n))
}

/// Graded dimensions of `L/(R)` through degree `class` for homogeneous
/// relations, eliminating degree by degree.
pub fn quotient_dims_oracle(k: u8, relations: &[(usize, Poly)], class: usize) -> Vec<usize> {
    let mut ideal: Vec<Vec<Poly>> = vec![Vec::new(); class + 1];
    let mut out = Vec::new();
    for n in 1..=class {
        let mut gens: Vec<Poly> = relations.iter().filter(|(d, _)| *d == n).map(|(_, p)| p.clone()).collect();
        for p in &ideal[n - 1] {
            for i in 0..k {
                gens.push(commutator(&letter(i), p));
            }
        }
        let r = rank(&gens);
        out.push(free_dim_oracle(k, n) - r);
        ideal[n] = gens;
    }
    out
}

/// A Lyndon-basis element expanded through its standard bracketing.
pub fn expand(x: &LieElement<Q>) -> Poly {
    fn word(w: &Word) -> Poly {
        if w.len() == 1 {
            return letter(w.at(0) as u8);
        }
        let (u, v) = w.standard_factorization();
        commutator(&word(&u), &word(&v))
    }
    let mut out = Poly::new();
    for (w, c) in x.terms() {
        out = add(&out, &word(w), c);
    }
    out
}

/// Truncated `exp` and `log` in the completed free associative algebra.
pub fn truncate(p: &Poly, degree: usize) -> Poly {
    p.iter().filter(|(w, _)| w.len() <= degree).map(|(w, c)| (w.clone(), c.clone())).collect()
}

pub fn exp_series(x: &Poly, degree: usize) -> Poly {
    let mut out = Poly::from([(vec![], Q::one())]);
    let mut term = out.clone();
    for n in 1..=degree {
        term = truncate(&mul(&term, x), degree);
        term = term.into_iter().map(|(w, c)| (w, c / Q::from_int(n as i64))).collect();
        out = add(&out, &term, &Q::one());
    }
    out
}

pub fn log_series(g: &Poly, degree: usize) -> Poly {
    let mut y = g.clone();
    y.remove(&vec![]);
    let mut out = Poly::new();
    let mut power = Poly::from([(vec![], Q::one())]);
    for n in 1..=degree {
        power = truncate(&mul(&power, &y), degree);
        let sign = if n % 2 == 1 { Q::one() } else { -Q::one() };
        out = add(&out, &power, &(sign / Q::from_int(n as i64)));
    }
    out
}

/// The simplicial cup cochain `(α ∪ β)(σ) = α(d₂σ)·β(d₀σ)` on every
/// 2-simplex listed in `slots2`, with `α`, `β` given on level-1 simplices.
pub fn simplicial_cup(k: &SimplicialSetFin, alpha: &BTreeMap<usize, Q>, beta: &BTreeMap<usize, Q>, slots2: &[usize]) -> Vec<Q> {
    let level1 = k.level(1);
    let level2 = k.level(2);
    slots2
        .iter()
        .map(|&t| {
            let sigma = &level2.simplices[t];
            let front = level1.index_of(&k.face(sigma, 2));
            let back = level1.index_of(&k.face(sigma, 0));
            let a = alpha.get(&front).cloned().unwrap_or_else(Q::zero);
            let b = beta.get(&back).cloned().unwrap_or_else(Q::zero);
            a * b
        })
        .collect()
}

/// Edge values on a one-vertex presentation complex, from generator
/// images: the diagonal `r{r}_{k}` carries the product of the first `k`
/// relator letters.
pub fn presentation_rep(
    k: &SimplicialSetFin,
    alg: &NilpotentAlgebra<Q>,
    generators: &[&str],
    relators: &[&str],
    images: &[Vec<Q>],
) -> Representation<Q> {
    let image_of = |c: char| -> Vec<Q> {
        let lower = c.to_ascii_lowercase().to_string();
        let i = generators.iter().position(|g| *g == lower).expect("letter");
        if c.is_uppercase() {
            alg.group_inverse(&images[i])
        } else {
            images[i].clone()
        }
    };
    let values: Vec<Vec<Q>> = k
        .names(1)
        .iter()
        .map(|name| {
            if let Some(i) = generators.iter().position(|g| g == name) {
                return images[i].clone();
            }
            let (r, len) = name[1..].split_once('_').expect("diagonal name");
            let (r, len): (usize, usize) = (r.parse().unwrap(), len.parse().unwrap());
            relators[r].chars().take(len).fold(alg.zero(), |acc, c| alg.group_multiply(&acc, &image_of(c)))
        })
        .collect();
    let (_, gens, rels) = malcev_core::local_systems::edge_path_group(k);
    Representation { generators: gens, relators: rels, images: values }
}

pub fn pointed(k: &Arc<SimplicialSetFin>) -> malcev_core::sdc::FiberSdc<Q> {
    pointed_sdc(k.clone(), NilpotentAlgebra::abelian(1))
}

pub fn q(n: i64) -> Q {
    Q::from_int(n)
}

pub fn random_vec<R: rand::Rng>(rng: &mut R, n: usize, range: i64) -> Vec<Q> {
    (0..n).map(|_| Q::from_int(rng.gen_range(-range..=range))).collect()
}

pub fn is_identity(g: &GroupCochain<Q>) -> bool {
    g.values.iter().all(|v| v.iter().all(Zero::is_zero))
}
