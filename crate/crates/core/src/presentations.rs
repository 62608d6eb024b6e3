//! Finitely presented quotients `L(V)/(R)` of truncated free Lie algebras.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lie_core::{evaluate, Alphabet, FreeLieAlgebra, Generator, LieElement, NilpotentAlgebra, Word};
use crate::linalg::{Echelon, SparseVec};
use crate::scalar::Scalar;

/// A Lie algebra presented by generators (with weights) and relations in
/// `Γ_2`, truncated at the class of its free algebra.
#[derive(Clone, Debug)]
pub struct PresentedLie<F: Scalar> {
    algebra: Arc<FreeLieAlgebra>,
    relations: Vec<LieElement<F>>,
}

impl<F: Scalar> PartialEq for PresentedLie<F> {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.compatible(&other.algebra) && self.relations == other.relations
    }
}

/// Coordinates on `L(V)/Γ_{c+1}` indexed by the full Lyndon basis.
#[derive(Clone, Debug)]
pub struct Coordinates {
    free: Arc<FreeLieAlgebra>,
    words: Vec<Word>,
    index: HashMap<Word, usize>,
}

impl Coordinates {
    pub fn new(free: &Arc<FreeLieAlgebra>) -> Self {
        let words = free.full_basis();
        let index = words.iter().enumerate().map(|(i, w)| (*w, i)).collect();
        Coordinates { free: free.clone(), words, index }
    }

    pub fn free(&self) -> &Arc<FreeLieAlgebra> {
        &self.free
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn to_sparse<F: Scalar>(&self, x: &LieElement<F>) -> SparseVec<F> {
        x.terms().map(|(w, c)| (self.index[w], c.clone())).collect()
    }

    pub fn to_element<F: Scalar>(&self, v: &SparseVec<F>) -> LieElement<F> {
        let coords: BTreeMap<Word, F> = v
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.words[*i], c.clone()))
            .collect();
        LieElement::from_parts(self.free.clone(), coords)
    }
}

/// The ideal generated by a set of elements: the span of all iterated
/// brackets with generators, as an echelon basis in [`Coordinates`].
pub fn ideal_closure<F: Scalar>(coords: &Coordinates, generators: &[LieElement<F>]) -> Echelon<F> {
    let free = coords.free();
    let gens: Vec<LieElement<F>> = free.generators();
    let mut ideal = Echelon::new();
    let mut queue: VecDeque<LieElement<F>> = generators.iter().cloned().collect();
    while let Some(x) = queue.pop_front() {
        if x.is_zero() {
            continue;
        }
        if ideal.insert(coords.to_sparse(&x)).is_none() {
            continue;
        }
        for g in &gens {
            let y = g.bracket(&x).expect("same algebra");
            if !y.is_zero() {
                queue.push_back(y);
            }
        }
    }
    ideal
}

/// Graded dimensions `dim Γ_n/Γ_{n+1}` of the quotient by an ideal given in echelon form.
fn graded_dims_of<F: Scalar>(coords: &Coordinates, ideal: &Echelon<F>) -> Vec<usize> {
    let class = coords.free().class();
    let mut dims: Vec<usize> = (1..=class).map(|n| coords.free().basis(n).len()).collect();
    for p in ideal.pivots() {
        dims[coords.words()[p].len() - 1] -= 1;
    }
    dims
}

fn same_subspace<F: Scalar>(a: &Echelon<F>, b: &Echelon<F>) -> bool {
    a.len() == b.len() && a.basis().all(|v| b.contains(v))
}

/// A presented algebra realised as a concrete nilpotent Lie algebra, with
/// the maps between it and the free algebra.
#[derive(Clone, Debug)]
pub struct Quotient<F: Scalar> {
    coords: Coordinates,
    ideal: Echelon<F>,
    kept: Vec<usize>,
    algebra: NilpotentAlgebra<F>,
}

impl<F: Scalar> Quotient<F> {
    pub fn new(free: &Arc<FreeLieAlgebra>, relations: &[LieElement<F>]) -> Result<Self> {
        let coords = Coordinates::new(free);
        let ideal = ideal_closure(&coords, relations);
        let kept: Vec<usize> = (0..coords.len()).filter(|i| !ideal.has_pivot(*i)).collect();
        let mut pos = vec![usize::MAX; coords.len()];
        for (k, i) in kept.iter().enumerate() {
            pos[*i] = k;
        }
        let alphabet = free.alphabet();
        let names: Vec<String> = kept.iter().map(|i| alphabet.format_bracketing(&coords.words()[*i])).collect();
        let n = kept.len();
        let mut structure = vec![vec![SparseVec::new(); n]; n];
        for a in 0..n {
            for b in (a + 1)..n {
                let u = free.basis_element::<F>(coords.words()[kept[a]]);
                let v = free.basis_element::<F>(coords.words()[kept[b]]);
                let br = u.bracket(&v)?;
                let red = ideal.reduce(&coords.to_sparse(&br));
                let row: SparseVec<F> = red.into_iter().map(|(i, c)| (pos[i], c)).collect();
                structure[b][a] = row.iter().map(|(i, c)| (*i, -c.clone())).collect();
                structure[a][b] = row;
            }
        }
        let algebra = NilpotentAlgebra::from_structure(names, structure)?;
        Ok(Quotient { coords, ideal, kept, algebra })
    }

    pub fn algebra(&self) -> &NilpotentAlgebra<F> {
        &self.algebra
    }

    pub fn free(&self) -> &Arc<FreeLieAlgebra> {
        self.coords.free()
    }

    pub fn ideal(&self) -> &Echelon<F> {
        &self.ideal
    }

    pub fn coordinates(&self) -> &Coordinates {
        &self.coords
    }

    /// Free-algebra word represented by quotient basis vector `k`.
    pub fn basis_word(&self, k: usize) -> Word {
        self.coords.words()[self.kept[k]]
    }

    pub fn graded_dims(&self) -> Vec<usize> {
        graded_dims_of(&self.coords, &self.ideal)
    }

    /// Image of a free Lie element in the quotient.
    pub fn project(&self, x: &LieElement<F>) -> Vec<F> {
        let red = self.ideal.reduce(&self.coords.to_sparse(x));
        let mut out = self.algebra.zero();
        for (k, i) in self.kept.iter().enumerate() {
            if let Some(c) = red.get(i) {
                out[k] = c.clone();
            }
        }
        out
    }

    /// The normal-form lift of a quotient element.
    pub fn lift(&self, v: &[F]) -> LieElement<F> {
        let sparse: SparseVec<F> =
            v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (self.kept[k], c.clone())).collect();
        self.coords.to_element(&sparse)
    }

    /// Is `x` zero in the quotient?
    pub fn is_zero(&self, x: &LieElement<F>) -> bool {
        self.ideal.contains(&self.coords.to_sparse(x))
    }
}

/// Rewrites a Lie element over a relabelled alphabet, letter `i` going to
/// letter `map[i]` of `target`.
pub fn relabel<F: Scalar>(x: &LieElement<F>, target: &Arc<FreeLieAlgebra>, map: &[usize]) -> Result<LieElement<F>> {
    let assoc = x.algebra().expand_coords(x.coords());
    let moved: BTreeMap<Word, F> = assoc
        .into_iter()
        .filter(|(w, _)| w.len() <= target.class())
        .map(|(w, c)| (Word::from_letters(&w.letters().map(|l| map[l]).collect::<Vec<_>>()), c))
        .collect();
    Ok(LieElement::from_parts(target.clone(), target.project_coords(&moved)?))
}

impl<F: Scalar> PresentedLie<F> {
    pub fn new(algebra: Arc<FreeLieAlgebra>, relations: Vec<LieElement<F>>) -> Result<Self> {
        for (i, r) in relations.iter().enumerate() {
            if !r.algebra().compatible(&algebra) {
                return Err(Error::Mismatch);
            }
            if r.min_degree() == Some(1) {
                return Err(Error::InvalidPresentation(format!("relation {i} has a degree-1 term")));
            }
        }
        Ok(PresentedLie { algebra, relations })
    }

    pub fn free(algebra: Arc<FreeLieAlgebra>) -> Self {
        PresentedLie { algebra, relations: Vec::new() }
    }

    pub fn algebra(&self) -> &Arc<FreeLieAlgebra> {
        &self.algebra
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.algebra.alphabet()
    }

    pub fn class(&self) -> usize {
        self.algebra.class()
    }

    pub fn relations(&self) -> &[LieElement<F>] {
        &self.relations
    }

    /// The same presentation read at another class.
    pub fn with_class(&self, class: usize) -> Result<Self> {
        let algebra = FreeLieAlgebra::new(self.alphabet().clone(), class)?;
        let relations = self.relations.iter().map(|r| r.recast(&algebra)).collect::<Result<Vec<_>>>()?;
        Ok(PresentedLie { algebra, relations })
    }

    pub fn ideal(&self) -> Echelon<F> {
        ideal_closure(&Coordinates::new(&self.algebra), &self.relations)
    }

    /// `d_n = dim Γ_n/Γ_{n+1}` of the quotient, `n = 1..=class`.
    pub fn quotient_dims(&self) -> Vec<usize> {
        let coords = Coordinates::new(&self.algebra);
        graded_dims_of(&coords, &ideal_closure(&coords, &self.relations))
    }

    pub fn quotient(&self) -> Result<Quotient<F>> {
        Quotient::new(&self.algebra, &self.relations)
    }

    /// Does the ideal agree with the ideal of the relations' quadratic parts?
    pub fn is_ideal_quadratic(&self) -> bool {
        let coords = Coordinates::new(&self.algebra);
        let full = ideal_closure(&coords, &self.relations);
        let quadratic: Vec<LieElement<F>> = self.relations.iter().map(|r| r.graded_component(2)).collect();
        same_subspace(&full, &ideal_closure(&coords, &quadratic))
    }

    /// Do all relations vanish under the assignment of generators into `target`?
    pub fn hom_check(&self, target: &NilpotentAlgebra<F>, assignment: &[Vec<F>]) -> Result<bool> {
        for r in &self.relations {
            if evaluate(r, target, assignment)?.iter().any(|c| !c.is_zero()) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Free product: disjoint union of generators and relations. Colliding
    /// names on the right get primes appended; the class is the smaller one.
    pub fn free_product(&self, other: &Self) -> Result<Self> {
        let mut gens: Vec<Generator> = self.alphabet().generators().to_vec();
        let mut right_names = Vec::new();
        for g in other.alphabet().generators() {
            let mut name = g.name.clone();
            while gens.iter().any(|h| h.name == name) || other.alphabet().generators().iter().any(|h| h.name == name && h != g)
            {
                name.push('\'');
            }
            right_names.push(name.clone());
            gens.push(Generator::weighted(name, g.weight));
        }
        let class = self.class().min(other.class());
        let algebra = FreeLieAlgebra::new(Alphabet::new(gens)?, class)?;
        let alphabet = algebra.alphabet();
        let left_map: Vec<usize> = self
            .alphabet()
            .generators()
            .iter()
            .map(|g| alphabet.index_of(&g.name).expect("kept name"))
            .collect();
        let right_map: Vec<usize> = right_names.iter().map(|n| alphabet.index_of(n).expect("kept name")).collect();
        let mut relations = Vec::new();
        for r in &self.relations {
            relations.push(relabel(r, &algebra, &left_map)?);
        }
        for r in &other.relations {
            relations.push(relabel(r, &algebra, &right_map)?);
        }
        relations.retain(|r| !r.is_zero());
        Ok(PresentedLie { algebra, relations })
    }
}
