//! Free Lie algebras truncated by the lower central series, in Lyndon
//! coordinates.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::lie_core::word::{lyndon_words, witt_dimension, Word, MAX_LETTERS};
use crate::scalar::{axpy, Scalar};

/// Truncation class used when callers do not ask for one.
pub const DEFAULT_CLASS: usize = 5;
/// Hard cap on the truncation class. Witt dimensions grow like `k^c / c`, so
/// classes near the cap are only practical on two or three generators.
pub const MAX_CLASS: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub weight: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>) -> Self {
        Generator { name: name.into(), weight: 1 }
    }

    pub fn weighted(name: impl Into<String>, weight: u32) -> Self {
        Generator { name: name.into(), weight }
    }
}

/// An ordered set of generators, sorted by name.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Alphabet {
    gens: Vec<Generator>,
}

impl Alphabet {
    pub fn new(mut gens: Vec<Generator>) -> Result<Self> {
        if gens.len() > MAX_LETTERS {
            return Err(Error::InvalidAlphabet(format!(
                "at most {MAX_LETTERS} generators are supported"
            )));
        }
        gens.sort_by(|a, b| a.name.cmp(&b.name));
        for pair in gens.windows(2) {
            if pair[0].name == pair[1].name {
                return Err(Error::InvalidAlphabet(format!("duplicate generator {}", pair[0].name)));
            }
        }
        for g in &gens {
            if g.name.is_empty() {
                return Err(Error::InvalidAlphabet("empty generator name".into()));
            }
            if g.weight == 0 {
                return Err(Error::InvalidAlphabet(format!("generator {} has weight 0", g.name)));
            }
        }
        Ok(Alphabet { gens })
    }

    pub fn from_names<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        Self::new(names.iter().map(|n| Generator::new(n.as_ref())).collect())
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn names(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.name.clone()).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.gens[i].weight
    }

    /// Sum of generator weights along a word.
    pub fn word_weight(&self, w: &Word) -> u32 {
        w.letters().map(|l| self.gens[l].weight).sum()
    }

    pub fn single_char_names(&self) -> bool {
        self.gens.iter().all(|g| g.name.chars().count() == 1)
    }

    /// The standard bracketing of a Lyndon word, e.g. `[a,[a,b]]`.
    pub fn format_bracketing(&self, w: &Word) -> String {
        if w.len() <= 1 {
            return self.format_word(w);
        }
        let (u, v) = w.standard_factorization();
        format!("[{},{}]", self.format_bracketing(&u), self.format_bracketing(&v))
    }

    pub fn format_word(&self, w: &Word) -> String {
        let sep = if self.single_char_names() { "" } else { " " };
        w.letters().map(|l| self.gens[l].name.as_str()).collect::<Vec<_>>().join(sep)
    }
}

type IntPoly = Arc<Vec<(Word, i64)>>;

/// The free Lie algebra `L(V)/Γ_{c+1}` on an alphabet, with lazily built and
/// cached Lyndon bases, envelope expansions and a bracket table.
pub struct FreeLieAlgebra {
    alphabet: Alphabet,
    class: usize,
    basis: Vec<OnceLock<Vec<Word>>>,
    expansions: RwLock<HashMap<Word, IntPoly>>,
    brackets: RwLock<HashMap<(Word, Word), IntPoly>>,
}

impl fmt::Debug for FreeLieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FreeLieAlgebra")
            .field("generators", &self.alphabet.names())
            .field("class", &self.class)
            .finish()
    }
}

impl FreeLieAlgebra {
    pub fn new(alphabet: Alphabet, class: usize) -> Result<Arc<Self>> {
        if class == 0 || class > MAX_CLASS {
            return Err(Error::ClassOutOfRange { class, cap: MAX_CLASS });
        }
        Ok(Arc::new(FreeLieAlgebra {
            alphabet,
            class,
            basis: (0..class).map(|_| OnceLock::new()).collect(),
            expansions: RwLock::new(HashMap::new()),
            brackets: RwLock::new(HashMap::new()),
        }))
    }

    pub fn on_names<S: AsRef<str>>(names: &[S], class: usize) -> Result<Arc<Self>> {
        Self::new(Alphabet::from_names(names)?, class)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn rank(&self) -> usize {
        self.alphabet.len()
    }

    /// Same alphabet and class.
    pub fn compatible(&self, other: &FreeLieAlgebra) -> bool {
        std::ptr::eq(self, other) || (self.class == other.class && self.alphabet == other.alphabet)
    }

    /// Lyndon basis of the degree-`degree` component (empty beyond the class).
    pub fn basis(&self, degree: usize) -> &[Word] {
        if degree == 0 || degree > self.class || self.alphabet.is_empty() {
            return &[];
        }
        self.basis[degree - 1].get_or_init(|| {
            lyndon_words(self.alphabet.len(), degree).expect("alphabet is non-empty")
        })
    }

    /// Whole basis of the truncated algebra, ordered by degree then lexicographically.
    pub fn full_basis(&self) -> Vec<Word> {
        (1..=self.class).flat_map(|d| self.basis(d).iter().copied()).collect()
    }

    pub fn graded_dims(&self) -> Vec<u64> {
        (1..=self.class)
            .map(|n| if self.alphabet.is_empty() { 0 } else { witt_dimension(self.alphabet.len(), n) })
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.graded_dims().iter().sum::<u64>() as usize
    }

    /// The standard bracketing of a Lyndon word expanded into the free
    /// associative algebra (integer coefficients).
    pub fn expansion(&self, w: Word) -> IntPoly {
        if let Some(p) = self.expansions.read().expect("cache poisoned").get(&w) {
            return p.clone();
        }
        let poly: Vec<(Word, i64)> = if w.len() == 1 {
            vec![(w, 1)]
        } else {
            let (u, v) = w.standard_factorization();
            let pu = self.expansion(u);
            let pv = self.expansion(v);
            let mut acc: BTreeMap<Word, i64> = BTreeMap::new();
            for (a, ca) in pu.iter() {
                for (b, cb) in pv.iter() {
                    *acc.entry(a.concat(b)).or_default() += ca * cb;
                    *acc.entry(b.concat(a)).or_default() -= ca * cb;
                }
            }
            acc.into_iter().filter(|(_, c)| *c != 0).collect()
        };
        let poly = Arc::new(poly);
        self.expansions.write().expect("cache poisoned").insert(w, poly.clone());
        poly
    }

    /// Expands a Lie element's coordinates into the associative envelope.
    pub(crate) fn expand_coords<F: Scalar>(&self, coords: &BTreeMap<Word, F>) -> BTreeMap<Word, F> {
        let mut out: BTreeMap<Word, F> = BTreeMap::new();
        for (w, c) in coords {
            for (word, k) in self.expansion(*w).iter() {
                let e = out.entry(*word).or_insert_with(F::zero);
                axpy(e, c, &F::from_int(*k));
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Rewrites an associative element in Lyndon coordinates by triangular
    /// elimination: the standard bracketing of a Lyndon word `w` is `w` plus
    /// lexicographically larger words of the same length, so the smallest
    /// surviving word must be Lyndon whenever the input is a Lie element.
    pub(crate) fn project_coords<F: Scalar>(
        &self,
        assoc: &BTreeMap<Word, F>,
    ) -> Result<BTreeMap<Word, F>> {
        let mut rest = assoc.clone();
        rest.retain(|_, c| !c.is_zero());
        let mut out = BTreeMap::new();
        while let Some((&w, c)) = rest.iter().next() {
            let c = c.clone();
            if w.is_empty() || !w.is_lyndon() {
                return Err(Error::NotPrimitive);
            }
            for (word, k) in self.expansion(w).iter() {
                let e = rest.entry(*word).or_insert_with(F::zero);
                axpy(e, &-c.clone(), &F::from_int(*k));
                if e.is_zero() {
                    rest.remove(word);
                }
            }
            out.insert(w, c);
        }
        Ok(out)
    }

    /// `[P_u, P_v]` in Lyndon coordinates (empty when the degree exceeds the class).
    fn basis_bracket(&self, u: Word, v: Word) -> IntPoly {
        let key = (u, v);
        if let Some(p) = self.brackets.read().expect("cache poisoned").get(&key) {
            return p.clone();
        }
        let poly = if u == v || u.len() + v.len() > self.class {
            Vec::new()
        } else if u > v {
            self.basis_bracket(v, u).iter().map(|(w, c)| (*w, -c)).collect()
        } else {
            let pu = self.expansion(u);
            let pv = self.expansion(v);
            let mut acc: BTreeMap<Word, i64> = BTreeMap::new();
            for (a, ca) in pu.iter() {
                for (b, cb) in pv.iter() {
                    *acc.entry(a.concat(b)).or_default() += ca * cb;
                    *acc.entry(b.concat(a)).or_default() -= ca * cb;
                }
            }
            let assoc: BTreeMap<Word, i64> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
            let as_i128: BTreeMap<Word, i128> = assoc.iter().map(|(w, c)| (*w, *c as i128)).collect();
            project_integer(self, as_i128)
        };
        let poly = Arc::new(poly);
        self.brackets.write().expect("cache poisoned").insert(key, poly.clone());
        poly
    }

    pub fn zero<F: Scalar>(self: &Arc<Self>) -> LieElement<F> {
        LieElement { algebra: self.clone(), coords: BTreeMap::new() }
    }

    pub fn generator<F: Scalar>(self: &Arc<Self>, i: usize) -> LieElement<F> {
        assert!(i < self.rank(), "generator index out of range");
        self.basis_element(Word::letter(i))
    }

    pub fn generator_named<F: Scalar>(self: &Arc<Self>, name: &str) -> Option<LieElement<F>> {
        self.alphabet.index_of(name).map(|i| self.generator(i))
    }

    pub fn generators<F: Scalar>(self: &Arc<Self>) -> Vec<LieElement<F>> {
        (0..self.rank()).map(|i| self.generator(i)).collect()
    }

    pub fn basis_element<F: Scalar>(self: &Arc<Self>, w: Word) -> LieElement<F> {
        let mut coords = BTreeMap::new();
        if w.len() <= self.class {
            coords.insert(w, F::one());
        }
        LieElement { algebra: self.clone(), coords }
    }

    /// Builds an element from Lyndon coordinates, validating keys.
    pub fn element<F: Scalar>(
        self: &Arc<Self>,
        terms: impl IntoIterator<Item = (Word, F)>,
    ) -> Result<LieElement<F>> {
        let mut coords = BTreeMap::new();
        for (w, c) in terms {
            if !w.is_lyndon() || w.letters().any(|l| l >= self.rank()) {
                return Err(Error::InvalidInput(format!("{w:?} is not a Lyndon word of this alphabet")));
            }
            if w.len() > self.class {
                return Err(Error::InvalidInput(format!("{w:?} exceeds class {}", self.class)));
            }
            let e: &mut F = coords.entry(w).or_insert_with(F::zero);
            *e = e.clone() + c;
        }
        coords.retain(|_, c: &mut F| !c.is_zero());
        Ok(LieElement { algebra: self.clone(), coords })
    }
}

/// Integer version of the triangular projection (used for bracket tables).
fn project_integer(alg: &FreeLieAlgebra, mut rest: BTreeMap<Word, i128>) -> Vec<(Word, i64)> {
    let mut out = Vec::new();
    while let Some((&w, &c)) = rest.iter().next() {
        debug_assert!(w.is_lyndon(), "bracket of Lie elements left a non-Lyndon leading word");
        for (word, k) in alg.expansion(w).iter() {
            let e = rest.entry(*word).or_default();
            *e -= c * (*k as i128);
            if *e == 0 {
                rest.remove(word);
            }
        }
        out.push((w, i64::try_from(c).expect("bracket coefficient overflow")));
    }
    out
}

/// An element of a truncated free Lie algebra, stored as a sparse map from
/// Lyndon words to coefficients. Zero coefficients are never stored, so
/// equality is structural.
#[derive(Clone)]
pub struct LieElement<F> {
    algebra: Arc<FreeLieAlgebra>,
    coords: BTreeMap<Word, F>,
}

impl<F: Scalar> PartialEq for LieElement<F> {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.compatible(&other.algebra) && self.coords == other.coords
    }
}

impl<F: Scalar> fmt::Debug for LieElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Scalar> fmt::Display for LieElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coords
            .iter()
            .map(|(w, c)| format!("{}·({})", c, self.algebra.alphabet.format_word(w)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<F: Scalar> LieElement<F> {
    pub fn algebra(&self) -> &Arc<FreeLieAlgebra> {
        &self.algebra
    }

    pub fn class(&self) -> usize {
        self.algebra.class
    }

    pub fn coords(&self) -> &BTreeMap<Word, F> {
        &self.coords
    }

    pub fn coefficient(&self, w: &Word) -> F {
        self.coords.get(w).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &F)> {
        self.coords.iter()
    }

    /// Lowest degree with a nonzero coefficient.
    pub fn min_degree(&self) -> Option<usize> {
        self.coords.keys().next().map(|w| w.len())
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.coords.keys().next_back().map(|w| w.len())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.algebra.compatible(&other.algebra) {
            Ok(())
        } else {
            Err(Error::Mismatch)
        }
    }

    fn combine(&self, other: &Self, sign: F) -> Result<Self> {
        self.check(other)?;
        let mut coords = self.coords.clone();
        for (w, c) in &other.coords {
            let e = coords.entry(*w).or_insert_with(F::zero);
            axpy(e, &sign, c);
            if e.is_zero() {
                coords.remove(w);
            }
        }
        Ok(LieElement { algebra: self.algebra.clone(), coords })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, F::one())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, -F::one())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return self.algebra.zero();
        }
        LieElement {
            algebra: self.algebra.clone(),
            coords: self.coords.iter().map(|(w, x)| (*w, x.clone() * c.clone())).collect(),
        }
    }

    /// The Lie bracket, truncated at the class.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut coords: BTreeMap<Word, F> = BTreeMap::new();
        for (u, cu) in &self.coords {
            for (v, cv) in &other.coords {
                if u.len() + v.len() > self.algebra.class {
                    continue;
                }
                let prod = cu.clone() * cv.clone();
                for (w, k) in self.algebra.basis_bracket(*u, *v).iter() {
                    let e = coords.entry(*w).or_insert_with(F::zero);
                    axpy(e, &prod, &F::from_int(*k));
                }
            }
        }
        coords.retain(|_, c| !c.is_zero());
        Ok(LieElement { algebra: self.algebra.clone(), coords })
    }

    /// Degree-`n` component (the image in `Γ_n / Γ_{n+1}` of the free algebra).
    pub fn graded_component(&self, n: usize) -> Self {
        LieElement {
            algebra: self.algebra.clone(),
            coords: self
                .coords
                .iter()
                .filter(|(w, _)| w.len() == n)
                .map(|(w, c)| (*w, c.clone()))
                .collect(),
        }
    }

    /// Drops every component of degree above `n`.
    pub fn truncate(&self, n: usize) -> Self {
        LieElement {
            algebra: self.algebra.clone(),
            coords: self
                .coords
                .iter()
                .filter(|(w, _)| w.len() <= n)
                .map(|(w, c)| (*w, c.clone()))
                .collect(),
        }
    }

    /// Re-expresses the element in a compatible algebra of another class,
    /// dropping components above the target class.
    pub fn recast(&self, target: &Arc<FreeLieAlgebra>) -> Result<Self> {
        if target.alphabet != self.algebra.alphabet {
            return Err(Error::Mismatch);
        }
        Ok(LieElement {
            algebra: target.clone(),
            coords: self
                .coords
                .iter()
                .filter(|(w, _)| w.len() <= target.class)
                .map(|(w, c)| (*w, c.clone()))
                .collect(),
        })
    }

    /// Weight of a weight-homogeneous element, `None` if inhomogeneous or zero.
    pub fn homogeneous_weight(&self) -> Option<u32> {
        let mut weights = self.coords.keys().map(|w| self.algebra.alphabet.word_weight(w));
        let first = weights.next()?;
        weights.all(|w| w == first).then_some(first)
    }

    pub(crate) fn from_parts(algebra: Arc<FreeLieAlgebra>, coords: BTreeMap<Word, F>) -> Self {
        LieElement { algebra, coords }
    }
}

/// All Lyndon words of a given degree over `alphabet`.
pub fn lyndon_basis(alphabet: &Alphabet, degree: usize) -> Result<Vec<Word>> {
    lyndon_words(alphabet.len(), degree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Q;

    fn ab(class: usize) -> Arc<FreeLieAlgebra> {
        FreeLieAlgebra::on_names(&["a", "b"], class).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::from_letters(&s.bytes().map(|b| (b - b'a') as usize).collect::<Vec<_>>())
    }

    #[test]
    fn bracket_examples() {
        let l = ab(4);
        let a: LieElement<Q> = l.generator(0);
        let b: LieElement<Q> = l.generator(1);
        assert!(a.bracket(&a).unwrap().is_zero());
        assert_eq!(a.bracket(&b).unwrap(), l.basis_element(w("ab")));
        let abb = b.bracket(&l.basis_element(w("ab"))).unwrap();
        assert_eq!(abb, l.basis_element::<Q>(w("abb")).neg());
    }

    #[test]
    fn truncation_at_class() {
        let l = ab(2);
        let a: LieElement<Q> = l.generator(0);
        let x = a.bracket(&l.basis_element(w("ab"))).unwrap();
        assert!(x.is_zero());
    }

    #[test]
    fn graded_components() {
        let l = ab(3);
        let x = l.element([(w("a"), Q::from_int(1)), (w("ab"), Q::ratio(1, 2))]).unwrap();
        assert_eq!(x.graded_component(1), l.generator(0));
        assert_eq!(x.graded_component(2), l.basis_element::<Q>(w("ab")).scale(&Q::ratio(1, 2)));
        assert!(x.graded_component(3).is_zero());
    }

    #[test]
    fn mismatched_alphabets() {
        let x: LieElement<Q> = ab(3).generator(0);
        let y: LieElement<Q> = FreeLieAlgebra::on_names(&["a", "c"], 3).unwrap().generator(0);
        assert_eq!(x.bracket(&y), Err(Error::Mismatch));
        let z: LieElement<Q> = ab(4).generator(1);
        assert_eq!(x.add(&z), Err(Error::Mismatch));
    }

    #[test]
    fn alphabet_is_sorted_and_validated() {
        let a = Alphabet::from_names(&["b", "a"]).unwrap();
        assert_eq!(a.names(), vec!["a", "b"]);
        assert!(Alphabet::from_names(&["a", "a"]).is_err());
        assert!(FreeLieAlgebra::new(a.clone(), 0).is_err());
        assert!(FreeLieAlgebra::new(a, MAX_CLASS + 1).is_err());
    }

    #[test]
    fn float_instantiation_agrees() {
        let l = ab(3);
        let a: LieElement<f64> = l.generator(0);
        let b: LieElement<f64> = l.generator(1);
        let x = a.bracket(&a.bracket(&b).unwrap()).unwrap();
        assert_eq!(x.coefficient(&w("aab")), 1.0);
    }
}
