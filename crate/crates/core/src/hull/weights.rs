use std::collections::BTreeSet;

use crate::error::Result;
use crate::lie_core::{FreeLieAlgebra, LieElement, Word};
use crate::linalg::Matrix;
use crate::presentations::PresentedLie;
use crate::scalar::Scalar;

/// Integer weights of the `H¹` and `H²` basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightTable {
    pub h1: Vec<i64>,
    pub h2: Vec<i64>,
}

impl WeightTable {
    /// `H¹` pure of weight 1 and `H²` pure of weight 2.
    pub fn smooth_proper(h1: usize, h2: usize) -> Self {
        WeightTable { h1: vec![1; h1], h2: vec![2; h2] }
    }

    pub fn is_pure(&self) -> bool {
        self.h1.windows(2).all(|w| w[0] == w[1]) && self.h2.windows(2).all(|w| w[0] == w[1])
    }

    pub fn same_multisets(&self, other: &Self) -> bool {
        let sorted = |v: &[i64]| {
            let mut v = v.to_vec();
            v.sort_unstable();
            v
        };
        sorted(&self.h1) == sorted(&other.h1) && sorted(&self.h2) == sorted(&other.h2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightVerdict {
    Quadratic,
    Bounded,
    NoneConstrained,
}

impl WeightVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            WeightVerdict::Quadratic => "quadratic",
            WeightVerdict::Bounded => "bounded",
            WeightVerdict::NoneConstrained => "none constrained",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightReport {
    /// Admissible bracket lengths for each `H²` weight, in input order.
    pub per_relation: Vec<(i64, BTreeSet<usize>)>,
    pub lengths: BTreeSet<usize>,
    pub verdict: WeightVerdict,
}

/// Numbers of parts (at least two) over all partitions of `m` into parts
/// drawn from `parts`.
fn part_counts(m: i64, parts: &[i64]) -> BTreeSet<usize> {
    let mut parts: Vec<i64> = parts.iter().copied().filter(|&p| p > 0).collect();
    parts.sort_unstable();
    parts.dedup();
    let mut out = BTreeSet::new();
    fn rec(rest: i64, from: usize, count: usize, parts: &[i64], out: &mut BTreeSet<usize>) {
        if rest == 0 {
            if count >= 2 {
                out.insert(count);
            }
            return;
        }
        for (i, &p) in parts.iter().enumerate().skip(from) {
            if p > rest {
                break;
            }
            rec(rest - p, i, count + 1, parts, out);
        }
    }
    if m > 0 {
        rec(m, 0, 0, &parts, &mut out);
    }
    out
}

/// Bracket lengths a weight-homogeneous relation of each `H²` weight may
/// have, given the `H¹` weights.
pub fn weight_report(w: &WeightTable) -> WeightReport {
    let per_relation: Vec<(i64, BTreeSet<usize>)> = w.h2.iter().map(|&m| (m, part_counts(m, &w.h1))).collect();
    let lengths: BTreeSet<usize> = per_relation.iter().flat_map(|(_, l)| l.iter().copied()).collect();
    let verdict = if w.h1.iter().chain(&w.h2).any(|&x| x <= 0) {
        WeightVerdict::NoneConstrained
    } else if lengths.iter().all(|&l| l == 2) {
        WeightVerdict::Quadratic
    } else {
        WeightVerdict::Bounded
    };
    WeightReport { per_relation, lengths, verdict }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NonFreeVerdict {
    pub nondegenerate: bool,
    /// Graded dimensions of `L(H¹∨)/(½∪)∨` through class 3, when computed.
    pub quotient_dims: Option<Vec<usize>>,
    pub free_dims: Option<Vec<usize>>,
    pub not_free: bool,
}

/// Nondegeneracy of `cup[j][i][k]` as a map `H¹ → Hom(H¹, H²)`, and, when
/// nondegenerate, the class-3 graded dimensions of the quadratic
/// presentation dual to half the cup product against the free ones.
pub fn pairing_nonfree_check<F: Scalar>(cup: &[Vec<Vec<F>>], h1: usize) -> Result<NonFreeVerdict> {
    let rows: Vec<Vec<F>> = (0..h1)
        .map(|i| cup.iter().flat_map(|c| (0..h1).map(move |k| c[i][k].clone())).collect())
        .collect();
    let nondegenerate = h1 > 0 && Matrix::from_rows(cup.len() * h1, &rows).rank() == h1;
    if !nondegenerate {
        return Ok(NonFreeVerdict { nondegenerate, quotient_dims: None, free_dims: None, not_free: false });
    }
    let names: Vec<String> = (0..h1).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    let free = FreeLieAlgebra::on_names(&names, 3)?;
    let relations: Vec<LieElement<F>> = cup
        .iter()
        .map(|c| {
            let terms = (0..h1)
                .flat_map(|i| (i + 1..h1).map(move |k| (i, k)))
                .filter(|&(i, k)| !c[i][k].is_zero())
                .map(|(i, k)| (Word::from_letters(&[i, k]), c[i][k].clone()));
            LieElement::from_parts(free.clone(), terms.collect())
        })
        .filter(|r| !r.is_zero())
        .collect();
    let p = PresentedLie::new(free.clone(), relations)?;
    let dims = p.quotient_dims();
    let free_dims: Vec<usize> = free.graded_dims().iter().map(|&d| d as usize).collect();
    let not_free = dims != free_dims;
    Ok(NonFreeVerdict { nondegenerate, quotient_dims: Some(dims), free_dims: Some(free_dims), not_free })
}
