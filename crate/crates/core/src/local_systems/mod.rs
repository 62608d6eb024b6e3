//! The cochain SDC `C^n(K, exp 𝔤)` of a finite simplicial set, flat
//! cochains and their holonomy.

pub mod builders;
pub mod simplicial;

use std::collections::VecDeque;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lie_core::NilpotentAlgebra;
use crate::linalg::is_zero_vec;
use crate::scalar::Scalar;
use crate::sdc::{GroupCochain, Sdc, SdcMorphism};

pub use builders::{build_space, SpaceKind};
pub use simplicial::{Simplex, SimplicialSetFin, MAX_LEVEL};

/// `S^n(𝔤) = C^n(K, exp 𝔤)`: one group element per `n`-simplex, degenerate
/// simplices included.
#[derive(Clone, Debug)]
pub struct CochainSdc<F: Scalar> {
    space: Arc<SimplicialSetFin>,
    algebra: NilpotentAlgebra<F>,
}

impl<F: Scalar> CochainSdc<F> {
    pub fn new(space: Arc<SimplicialSetFin>, algebra: NilpotentAlgebra<F>) -> Self {
        CochainSdc { space, algebra }
    }

    pub fn space(&self) -> &Arc<SimplicialSetFin> {
        &self.space
    }

    /// Level-1 cochain with the given values on nondegenerate edges and the
    /// identity on degenerate ones.
    pub fn edge_cochain(&self, edge_values: &[Vec<F>]) -> GroupCochain<F> {
        let mut g = self.unit(1);
        g.values[..edge_values.len()].clone_from_slice(edge_values);
        g
    }
}

impl<F: Scalar> Sdc<F> for CochainSdc<F> {
    fn algebra(&self) -> &NilpotentAlgebra<F> {
        &self.algebra
    }

    fn slots(&self, level: usize) -> usize {
        self.space.level_size(level)
    }

    fn max_level(&self) -> usize {
        MAX_LEVEL
    }

    fn coface(&self, i: usize, g: &GroupCochain<F>) -> GroupCochain<F> {
        let table = self.space.face_table(g.level + 1, i);
        GroupCochain { level: g.level + 1, values: table.iter().map(|&x| g.values[x].clone()).collect() }
    }

    fn codegeneracy(&self, i: usize, g: &GroupCochain<F>) -> GroupCochain<F> {
        let table = self.space.degeneracy_table(g.level - 1, i);
        GroupCochain { level: g.level - 1, values: table.iter().map(|&x| g.values[x].clone()).collect() }
    }

    fn product(&self, g: &GroupCochain<F>, h: &GroupCochain<F>) -> GroupCochain<F> {
        let split = self.space.split_table(g.level, h.level);
        GroupCochain {
            level: g.level + h.level,
            values: split.iter().map(|&(a, b)| self.algebra.group_multiply(&g.values[a], &h.values[b])).collect(),
        }
    }

    fn with_coefficients(&self, algebra: NilpotentAlgebra<F>) -> Box<dyn Sdc<F>> {
        Box::new(CochainSdc { space: self.space.clone(), algebra })
    }

    fn gauge_solve_pinned(
        &self,
        omega: &GroupCochain<F>,
        target: &GroupCochain<F>,
        pinned: &[usize],
    ) -> Result<Option<GroupCochain<F>>> {
        let tree = SpanningTree::new(&self.space);
        let t = tree.transport(&self.space, &self.algebra, omega);
        let t2 = tree.transport(&self.space, &self.algebra, target);
        let alg = &self.algebra;
        let x = match pinned.first() {
            // g(v) = t′(v)⁻¹ x t(v) = 1 forces x
            Some(&v) => alg.group_multiply(&t2[v], &alg.group_inverse(&t[v])),
            None => {
                let us: Vec<Vec<F>> = tree.loops.iter().map(|&e| hol_edge(&self.space, alg, &t, omega, e)).collect();
                let vs: Vec<Vec<F>> = tree.loops.iter().map(|&e| hol_edge(&self.space, alg, &t2, target, e)).collect();
                match alg.conjugator(&us, &vs) {
                    Some(x) => x,
                    None => return Ok(None),
                }
            }
        };
        let mut g = self.unit(0);
        for v in 0..self.space.count(0) {
            g.values[v] = alg.group_product(&[&alg.group_inverse(&t2[v]), &x, &t[v]]);
        }
        if pinned.iter().any(|&v| !is_zero_vec(&g.values[v])) {
            return Ok(None);
        }
        Ok((crate::sdc::gauge_apply(self, &g, omega) == *target).then_some(g))
    }
}

/// Restriction of cochains to the basepoint, `C^•(K) → C^•(pt)`.
pub struct BasepointRestriction<F: Scalar> {
    source: CochainSdc<F>,
    target: CochainSdc<F>,
}

impl<F: Scalar> BasepointRestriction<F> {
    pub fn new(space: Arc<SimplicialSetFin>, algebra: NilpotentAlgebra<F>) -> Self {
        let point = Arc::new(builders::point());
        BasepointRestriction { source: CochainSdc::new(space, algebra.clone()), target: CochainSdc::new(point, algebra) }
    }
}

impl<F: Scalar> SdcMorphism<F> for BasepointRestriction<F> {
    fn source(&self) -> &dyn Sdc<F> {
        &self.source
    }

    fn target(&self) -> &dyn Sdc<F> {
        &self.target
    }

    fn apply(&self, g: &GroupCochain<F>) -> GroupCochain<F> {
        let x = self.source.space.basepoint_simplex(g.level);
        GroupCochain { level: g.level, values: vec![g.values[x].clone()] }
    }

    fn with_coefficients(&self, algebra: NilpotentAlgebra<F>) -> Arc<dyn SdcMorphism<F>> {
        Arc::new(BasepointRestriction::new(self.source.space.clone(), algebra))
    }
}

/// The pointed SDC: cochains equal to the identity over the basepoint.
pub fn pointed_sdc<F: Scalar>(space: Arc<SimplicialSetFin>, algebra: NilpotentAlgebra<F>) -> crate::sdc::FiberSdc<F> {
    crate::sdc::fiber_sdc(Arc::new(BasepointRestriction::new(space, algebra)))
        .expect("restriction to the basepoint is a morphism")
}

/// `ω(d₂σ)·ω(d₀σ) = ω(d₁σ)` on every 2-simplex, and `ω = 1` on degenerate edges.
pub fn flat_check<F: Scalar>(space: &SimplicialSetFin, algebra: &NilpotentAlgebra<F>, omega: &GroupCochain<F>) -> bool {
    if omega.level != 1 || omega.values.len() != space.level_size(1) {
        return false;
    }
    let edges = space.count(1);
    if omega.values[edges..].iter().any(|v| !is_zero_vec(v)) {
        return false;
    }
    let level1 = space.level(1);
    let value = |s: &Simplex| &omega.values[level1.index_of(s)];
    (0..space.count(2)).all(|t| {
        let f = space.nondegenerate_faces(2, t);
        algebra.group_multiply(value(&f[2]), value(&f[0])) == *value(&f[1])
    })
}

/// Breadth-first spanning tree of the 1-skeleton from the basepoint.
#[derive(Clone, Debug)]
pub struct SpanningTree {
    /// Tree edges in visiting order, each with the newly reached vertex.
    pub order: Vec<(usize, usize)>,
    /// Nondegenerate edges outside the tree, in index order.
    pub loops: Vec<usize>,
}

impl SpanningTree {
    pub fn new(space: &SimplicialSetFin) -> Self {
        let nv = space.count(0);
        let mut seen = vec![false; nv];
        let mut in_tree = vec![false; space.count(1)];
        let mut order = Vec::new();
        let mut queue = VecDeque::from([space.basepoint()]);
        seen[space.basepoint()] = true;
        while let Some(v) = queue.pop_front() {
            for e in 0..space.count(1) {
                let (a, b) = space.edge_ends(e);
                let next = if a == v && !seen[b] {
                    b
                } else if b == v && !seen[a] {
                    a
                } else {
                    continue;
                };
                seen[next] = true;
                in_tree[e] = true;
                order.push((e, next));
                queue.push_back(next);
            }
        }
        let loops = (0..space.count(1)).filter(|&e| !in_tree[e]).collect();
        SpanningTree { order, loops }
    }

    /// `t(v)`: product of `ω` along the tree path from the basepoint, with
    /// `t(target) = t(source)·ω(e)`.
    pub fn transport<F: Scalar>(
        &self,
        space: &SimplicialSetFin,
        algebra: &NilpotentAlgebra<F>,
        omega: &GroupCochain<F>,
    ) -> Vec<Vec<F>> {
        let mut t = vec![algebra.zero(); space.count(0)];
        for &(e, reached) in &self.order {
            let (a, b) = space.edge_ends(e);
            t[reached] = if reached == b {
                algebra.group_multiply(&t[a], &omega.values[e])
            } else {
                algebra.group_multiply(&t[b], &algebra.group_inverse(&omega.values[e]))
            };
        }
        t
    }
}

/// `t(e₀)·ω(e)·t(e₁)⁻¹` for an edge from `e₀` to `e₁`.
fn hol_edge<F: Scalar>(
    space: &SimplicialSetFin,
    algebra: &NilpotentAlgebra<F>,
    t: &[Vec<F>],
    omega: &GroupCochain<F>,
    e: usize,
) -> Vec<F> {
    let (a, b) = space.edge_ends(e);
    algebra.group_product(&[&t[a], &omega.values[e], &algebra.group_inverse(&t[b])])
}

/// A homomorphism from the edge-path group, presented by the non-tree edges
/// with one relator per 2-simplex, to `exp 𝔤`.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation<F> {
    pub generators: Vec<String>,
    /// Relators as words of `(generator, inverted)` letters.
    pub relators: Vec<Vec<(usize, bool)>>,
    pub images: Vec<Vec<F>>,
}

/// Generators and relators of the edge-path group for the standard spanning tree.
pub fn edge_path_group(space: &SimplicialSetFin) -> (SpanningTree, Vec<String>, Vec<Vec<(usize, bool)>>) {
    let tree = SpanningTree::new(space);
    let mut gen_of = vec![None; space.count(1)];
    for (k, &e) in tree.loops.iter().enumerate() {
        gen_of[e] = Some(k);
    }
    let names = tree.loops.iter().map(|&e| space.names(1)[e].clone()).collect();
    let letter = |s: &Simplex, inverted: bool| -> Option<(usize, bool)> {
        if s.is_degenerate() {
            return None;
        }
        gen_of[s.nd].map(|g| (g, inverted))
    };
    let relators = (0..space.count(2))
        .map(|t| {
            let f = space.nondegenerate_faces(2, t);
            [letter(&f[2], false), letter(&f[0], false), letter(&f[1], true)].into_iter().flatten().collect()
        })
        .collect();
    (tree, names, relators)
}

fn evaluate_word<F: Scalar>(algebra: &NilpotentAlgebra<F>, images: &[Vec<F>], word: &[(usize, bool)]) -> Vec<F> {
    word.iter().fold(algebra.zero(), |acc, &(g, inv)| {
        let x = if inv { algebra.group_inverse(&images[g]) } else { images[g].clone() };
        algebra.group_multiply(&acc, &x)
    })
}

impl<F: Scalar> Representation<F> {
    pub fn relators_hold(&self, algebra: &NilpotentAlgebra<F>) -> Option<usize> {
        self.relators.iter().position(|r| !is_zero_vec(&evaluate_word(algebra, &self.images, r)))
    }
}

/// Holonomy of a flat cochain around each non-tree edge.
pub fn holonomy<F: Scalar>(
    space: &SimplicialSetFin,
    algebra: &NilpotentAlgebra<F>,
    omega: &GroupCochain<F>,
) -> Result<Representation<F>> {
    if !flat_check(space, algebra, omega) {
        return Err(Error::InvalidInput("cochain is not flat".into()));
    }
    let (tree, generators, relators) = edge_path_group(space);
    let t = tree.transport(space, algebra, omega);
    let images = tree.loops.iter().map(|&e| hol_edge(space, algebra, &t, omega, e)).collect();
    let rep = Representation { generators, relators, images };
    if rep.relators_hold(algebra).is_some() {
        return Err(Error::Internal("holonomy of a flat cochain violates a relator".into()));
    }
    Ok(rep)
}

/// The flat cochain with identity on tree edges and `ρ` on the others.
pub fn rep_to_mc<F: Scalar>(
    space: &SimplicialSetFin,
    algebra: &NilpotentAlgebra<F>,
    rho: &Representation<F>,
) -> Result<GroupCochain<F>> {
    let (tree, _, relators) = edge_path_group(space);
    if rho.images.len() != tree.loops.len() || rho.images.iter().any(|v| v.len() != algebra.dim()) {
        return Err(Error::InvalidInput("representation does not match the space".into()));
    }
    let check = Representation { generators: Vec::new(), relators, images: rho.images.clone() };
    if let Some(k) = check.relators_hold(algebra) {
        return Err(Error::RelatorViolation(k));
    }
    let mut g = GroupCochain { level: 1, values: vec![algebra.zero(); space.level_size(1)] };
    for (&e, v) in tree.loops.iter().zip(&rho.images) {
        g.values[e] = v.clone();
    }
    Ok(g)
}

/// The obstruction pairing of two tangent 1-cocycles, as an `H²` class in
/// the harmonic basis of [`crate::hull::contraction_of`]; `halved` is the
/// normalisation matching the quadratic part of the hull.
#[derive(Clone, Debug, PartialEq)]
pub struct Pairing<F> {
    pub raw: Vec<F>,
    pub halved: Vec<F>,
}

/// Lifts `α·ε + β·ν (+ γ·[ε,ν])` to the Heisenberg algebra
/// `L(ε,ν)/Γ₃` and returns the class of its Maurer–Cartan defect, which
/// is central. Cochains are given by their values on nondegenerate edges.
pub fn obstruction_pairing<F: Scalar>(
    space: Arc<SimplicialSetFin>,
    alpha: &[F],
    beta: &[F],
    gamma: Option<&[F]>,
) -> Result<Pairing<F>> {
    let edges = space.count(1);
    if alpha.len() != edges || beta.len() != edges || gamma.is_some_and(|g| g.len() != edges) {
        return Err(Error::InvalidInput(format!("cochains need one value per edge ({edges})")));
    }
    let linear = pointed_sdc(space.clone(), NilpotentAlgebra::abelian(1));
    let cd = crate::hull::contraction_of(&linear)?;
    let slots = linear.tangent_slots(1);
    let tangent = |v: &[F]| -> Vec<F> {
        slots.iter().map(|&s| if s < edges { v[s].clone() } else { F::zero() }).collect()
    };
    for (name, v) in [("α", alpha), ("β", beta)] {
        if !cd.is_cocycle1(&tangent(v)) {
            return Err(Error::NotCocycle(format!("{name} is not a 1-cocycle")));
        }
    }
    let heis = pointed_sdc(space, NilpotentAlgebra::heisenberg());
    let mut lift = heis.unit(1);
    for e in 0..edges {
        let z = gamma.map_or_else(F::zero, |g| g[e].clone());
        lift.values[e] = vec![alpha[e].clone(), beta[e].clone(), z];
    }
    let raw = crate::hull::obstruction_class(&heis, &cd, &lift, &[F::zero(), F::zero(), F::one()])?;
    let half = F::one() / F::from_int(2);
    let halved = raw.iter().map(|c| c.clone() * half.clone()).collect();
    Ok(Pairing { raw, halved })
}
