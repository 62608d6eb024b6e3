//! The truncated free associative algebra `A(V)/(V)^{c+1}`: coproduct,
//! primitives, exp/log, and the Baker–Campbell–Hausdorff product.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lie_core::{FreeLieAlgebra, LieElement, Word};
use crate::scalar::{axpy, Scalar};

/// Element of the truncated free associative algebra. Shares alphabet and
/// class with a [`FreeLieAlgebra`]; the empty word is the unit.
#[derive(Clone)]
pub struct AssocElement<F> {
    algebra: Arc<FreeLieAlgebra>,
    coords: BTreeMap<Word, F>,
}

impl<F: Scalar> PartialEq for AssocElement<F> {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.compatible(&other.algebra) && self.coords == other.coords
    }
}

impl<F: Scalar> fmt::Debug for AssocElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coords
            .iter()
            .map(|(w, c)| {
                if w.is_empty() {
                    format!("{c}")
                } else {
                    format!("{c}·{}", self.algebra.alphabet().format_word(w))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Element of `A(V) ⊗ A(V)`, truncated on each side.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorSquareElement<F> {
    pub coords: BTreeMap<(Word, Word), F>,
}

impl<F: Scalar> TensorSquareElement<F> {
    pub fn coefficient(&self, left: Word, right: Word) -> F {
        self.coords.get(&(left, right)).cloned().unwrap_or_else(F::zero)
    }
}

fn insert_add<K: Ord + Copy, F: Scalar>(map: &mut BTreeMap<K, F>, key: K, c: &F, x: &F) {
    let e = map.entry(key).or_insert_with(F::zero);
    axpy(e, c, x);
    if e.is_zero() {
        map.remove(&key);
    }
}

impl<F: Scalar> AssocElement<F> {
    pub fn zero(algebra: &Arc<FreeLieAlgebra>) -> Self {
        AssocElement { algebra: algebra.clone(), coords: BTreeMap::new() }
    }

    pub fn one(algebra: &Arc<FreeLieAlgebra>) -> Self {
        Self::monomial(algebra, Word::EMPTY, F::one())
    }

    /// `c · w`, or zero if `w` is longer than the class.
    pub fn monomial(algebra: &Arc<FreeLieAlgebra>, w: Word, c: F) -> Self {
        let mut coords = BTreeMap::new();
        if w.len() <= algebra.class() && !c.is_zero() {
            coords.insert(w, c);
        }
        AssocElement { algebra: algebra.clone(), coords }
    }

    pub fn from_terms(algebra: &Arc<FreeLieAlgebra>, terms: impl IntoIterator<Item = (Word, F)>) -> Self {
        let mut coords = BTreeMap::new();
        for (w, c) in terms {
            if w.len() <= algebra.class() {
                insert_add(&mut coords, w, &F::one(), &c);
            }
        }
        AssocElement { algebra: algebra.clone(), coords }
    }

    pub fn algebra(&self) -> &Arc<FreeLieAlgebra> {
        &self.algebra
    }

    pub fn coords(&self) -> &BTreeMap<Word, F> {
        &self.coords
    }

    pub fn coefficient(&self, w: &Word) -> F {
        self.coords.get(w).cloned().unwrap_or_else(F::zero)
    }

    pub fn constant_term(&self) -> F {
        self.coefficient(&Word::EMPTY)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.algebra.compatible(&other.algebra) {
            Ok(())
        } else {
            Err(Error::Mismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (w, c) in &other.coords {
            insert_add(&mut out.coords, *w, &F::one(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-F::one()))
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.algebra);
        }
        AssocElement {
            algebra: self.algebra.clone(),
            coords: self.coords.iter().map(|(w, x)| (*w, x.clone() * c.clone())).collect(),
        }
    }

    /// Concatenation product; words longer than the class are dropped.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let class = self.algebra.class();
        let mut coords = BTreeMap::new();
        for (u, cu) in &self.coords {
            for (v, cv) in &other.coords {
                if u.len() + v.len() > class {
                    continue;
                }
                insert_add(&mut coords, u.concat(v), cu, cv);
            }
        }
        Ok(AssocElement { algebra: self.algebra.clone(), coords })
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.multiply(other)?.sub(&other.multiply(self)?)
    }

    /// The algebra map with `Δ(v) = v⊗1 + 1⊗v`: each word goes to the sum of
    /// its splittings into complementary subwords.
    pub fn coproduct(&self) -> TensorSquareElement<F> {
        let mut coords = BTreeMap::new();
        for (w, c) in &self.coords {
            let letters = w.to_vec();
            let n = letters.len();
            for mask in 0u32..(1 << n) {
                let mut left = Vec::new();
                let mut right = Vec::new();
                for (i, l) in letters.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        left.push(*l);
                    } else {
                        right.push(*l);
                    }
                }
                let key = (Word::from_letters(&left), Word::from_letters(&right));
                insert_add(&mut coords, key, &F::one(), c);
            }
        }
        TensorSquareElement { coords }
    }

    pub fn is_primitive(&self) -> bool {
        let mut expected = BTreeMap::new();
        for (w, c) in &self.coords {
            insert_add(&mut expected, (*w, Word::EMPTY), &F::one(), c);
            insert_add(&mut expected, (Word::EMPTY, *w), &F::one(), c);
        }
        self.coproduct().coords == expected
    }

    /// `exp(x)` for `x` without constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::ConstantTerm { op: "exp", expected: "0" });
        }
        let mut out = Self::one(&self.algebra);
        let mut power = Self::one(&self.algebra);
        for k in 1..=self.algebra.class() {
            power = power.multiply(self)?.scale(&(F::one() / F::from_int(k as i64)));
            if power.is_zero() {
                break;
            }
            out = out.add(&power)?;
        }
        Ok(out)
    }

    /// `log(g) = Σ (-1)^{n-1} (g-1)^n / n` for `g` with constant term one.
    pub fn log(&self) -> Result<Self> {
        if self.constant_term() != F::one() {
            return Err(Error::ConstantTerm { op: "log", expected: "1" });
        }
        let y = self.sub(&Self::one(&self.algebra))?;
        let mut out = Self::zero(&self.algebra);
        let mut power = Self::one(&self.algebra);
        for k in 1..=self.algebra.class() {
            power = power.multiply(&y)?;
            if power.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { F::one() } else { -F::one() };
            out = out.add(&power.scale(&(sign / F::from_int(k as i64))))?;
        }
        Ok(out)
    }
}

/// Embeds a Lie element into the envelope via its Lyndon bracketings.
pub fn expand<F: Scalar>(x: &LieElement<F>) -> AssocElement<F> {
    AssocElement { algebra: x.algebra().clone(), coords: x.algebra().expand_coords(x.coords()) }
}

/// Inverse of [`expand`] on primitive elements.
pub fn project_lie<F: Scalar>(y: &AssocElement<F>) -> Result<LieElement<F>> {
    let coords = y.algebra.project_coords(&y.coords)?;
    Ok(LieElement::from_parts(y.algebra.clone(), coords))
}

/// `log(exp x · exp y)`, computed in the envelope.
pub fn bch<F: Scalar>(x: &LieElement<F>, y: &LieElement<F>) -> Result<LieElement<F>> {
    if !x.algebra().compatible(y.algebra()) {
        return Err(Error::Mismatch);
    }
    let g = expand(x).exp()?.multiply(&expand(y).exp()?)?;
    project_lie(&g.log()?)
}
