//! Simplicial deformation complexes: cochain-shaped cosimplicial groups
//! with an associative graded product, evaluated at one nilpotent
//! coefficient algebra at a time.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::lie_core::NilpotentAlgebra;
use crate::linalg::{is_zero_vec, Matrix};
use crate::scalar::Scalar;

mod dga;
mod tangent;

pub use dga::DgAlgebra;
pub use tangent::{aw_tangent_algebra, tangent_cohomology, TangentComplex};

/// An element of level `n`: one group element (in exponential coordinates)
/// per slot. For cochain SDCs the slots are the `n`-simplices.
#[derive(Clone, PartialEq)]
pub struct GroupCochain<F> {
    pub level: usize,
    pub values: Vec<Vec<F>>,
}

impl<F: Scalar> fmt::Debug for GroupCochain<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "level {} ", self.level)?;
        f.debug_map()
            .entries(self.values.iter().enumerate().filter(|(_, v)| !is_zero_vec(v)).map(|(i, v)| {
                (i, v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
            }))
            .finish()
    }
}

impl<F: Scalar> GroupCochain<F> {
    pub fn is_identity(&self) -> bool {
        self.values.iter().all(|v| is_zero_vec(v))
    }

    /// First slot where two cochains differ.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        if self.level != other.level || self.values.len() != other.values.len() {
            return Some(0);
        }
        self.values.iter().zip(&other.values).position(|(a, b)| a != b)
    }
}

/// The operations of an SDC evaluated at one coefficient algebra.
///
/// Cofaces use the full cosimplicial range `0..=n+1`; the outer two agree
/// with `ω₀ * s` and `s * ω₀`.
pub trait Sdc<F: Scalar>: Send + Sync {
    fn algebra(&self) -> &NilpotentAlgebra<F>;

    /// Number of slots at a level.
    fn slots(&self, level: usize) -> usize;

    /// Highest level the instance can represent.
    fn max_level(&self) -> usize;

    /// Slots that are unconstrained; the others must hold the identity.
    fn tangent_slots(&self, level: usize) -> Vec<usize> {
        (0..self.slots(level)).collect()
    }

    fn contains(&self, g: &GroupCochain<F>) -> bool {
        if g.values.len() != self.slots(g.level) || g.values.iter().any(|v| v.len() != self.algebra().dim()) {
            return false;
        }
        let free = self.tangent_slots(g.level);
        g.values.iter().enumerate().all(|(i, v)| free.binary_search(&i).is_ok() || is_zero_vec(v))
    }

    fn coface(&self, i: usize, g: &GroupCochain<F>) -> GroupCochain<F>;

    fn codegeneracy(&self, i: usize, g: &GroupCochain<F>) -> GroupCochain<F>;

    fn product(&self, g: &GroupCochain<F>, h: &GroupCochain<F>) -> GroupCochain<F>;

    /// The same SDC over another coefficient algebra.
    fn with_coefficients(&self, algebra: NilpotentAlgebra<F>) -> Box<dyn Sdc<F>>;

    /// A level-0 element `g` with `g * ω * g⁻¹ = ω′`, also holding the
    /// identity at the given level-0 slots; `None` certifies that there is none.
    fn gauge_solve_pinned(
        &self,
        _omega: &GroupCochain<F>,
        _target: &GroupCochain<F>,
        _pinned: &[usize],
    ) -> Result<Option<GroupCochain<F>>> {
        Err(Error::InvalidInput("gauge solving is not available for this SDC".into()))
    }

    fn unit(&self, level: usize) -> GroupCochain<F> {
        GroupCochain { level, values: vec![self.algebra().zero(); self.slots(level)] }
    }

    /// `ω₀`, the image of the unique element over the zero algebra.
    fn base(&self) -> GroupCochain<F> {
        self.unit(1)
    }

    fn inverse(&self, g: &GroupCochain<F>) -> GroupCochain<F> {
        GroupCochain { level: g.level, values: g.values.iter().map(|v| self.algebra().group_inverse(v)).collect() }
    }
}

/// Structure-preserving map between SDCs over the same coefficients.
pub trait SdcMorphism<F: Scalar>: Send + Sync {
    fn source(&self) -> &dyn Sdc<F>;
    fn target(&self) -> &dyn Sdc<F>;
    fn apply(&self, g: &GroupCochain<F>) -> GroupCochain<F>;
    fn with_coefficients(&self, algebra: NilpotentAlgebra<F>) -> Arc<dyn SdcMorphism<F>>;
}

/// Random element of a level, supported on the unconstrained slots, with
/// small rational coordinates.
pub fn random_element<F: Scalar, R: Rng>(s: &dyn Sdc<F>, level: usize, rng: &mut R) -> GroupCochain<F> {
    let mut g = s.unit(level);
    let dim = s.algebra().dim();
    for i in s.tangent_slots(level) {
        g.values[i] = (0..dim).map(|_| F::ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3))).collect();
    }
    g
}

/// Sample elements per level used by the axiom checker: the identity, every
/// single-slot basis element when the carrier is small, and random elements.
pub fn default_samples<F: Scalar, R: Rng>(s: &dyn Sdc<F>, top: usize, random: usize, rng: &mut R) -> Vec<Vec<GroupCochain<F>>> {
    let dim = s.algebra().dim();
    (0..=top)
        .map(|level| {
            let mut out = vec![s.unit(level)];
            let free = s.tangent_slots(level);
            if free.len() * dim <= 24 {
                for &slot in &free {
                    for b in 0..dim {
                        let mut g = s.unit(level);
                        g.values[slot] = s.algebra().unit(b);
                        out.push(g);
                    }
                }
            }
            for _ in 0..random {
                out.push(random_element(s, level, rng));
            }
            out
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomResult {
    pub axiom: usize,
    pub statement: &'static str,
    pub checked: usize,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub results: Vec<AxiomResult>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.witness.is_none())
    }

    pub fn failures(&self) -> Vec<&AxiomResult> {
        self.results.iter().filter(|r| r.witness.is_some()).collect()
    }

    pub fn passes(&self, axiom: usize) -> bool {
        self.results.iter().filter(|r| r.axiom == axiom).all(|r| r.witness.is_none())
    }
}

const STATEMENTS: [&str; 8] = [
    "product associative with unit",
    "∂^j ∂^i = ∂^i ∂^(j-1), i < j",
    "σ^j σ^i = σ^i σ^(j+1), i ≤ j",
    "σ^j ∂^i = ∂^i σ^(j-1) | id | ∂^(i-1) σ^j",
    "∂^i(s) * t = ∂^i(s * t)",
    "s * ∂^i(t) = ∂^(i+m)(s * t)",
    "σ^i(s) * t = σ^i(s * t)",
    "s * σ^i(t) = σ^(i+m)(s * t)",
];

struct Recorder {
    results: Vec<AxiomResult>,
}

impl Recorder {
    fn check<F: Scalar>(&mut self, axiom: usize, lhs: &GroupCochain<F>, rhs: &GroupCochain<F>, what: impl FnOnce() -> String) {
        let r = &mut self.results[axiom];
        r.checked += 1;
        if r.witness.is_none() {
            if let Some(slot) = lhs.first_difference(rhs) {
                r.witness = Some(format!("{} differs at level {} slot {slot}", what(), lhs.level));
            }
        }
    }
}

/// Checks the SDC axioms (and associativity of the product) on all index
/// combinations over the given samples. `samples[n]` are elements of level
/// `n`; products are formed for `m + n ≤ samples.len() - 1`.
pub fn check_axioms<F: Scalar>(s: &dyn Sdc<F>, samples: &[Vec<GroupCochain<F>>]) -> AxiomReport {
    let mut rec = Recorder {
        results: STATEMENTS
            .iter()
            .enumerate()
            .map(|(axiom, statement)| AxiomResult { axiom, statement, checked: 0, witness: None })
            .collect(),
    };
    let top = samples.len().saturating_sub(1);
    for (n, level) in samples.iter().enumerate() {
        for (a, g) in level.iter().enumerate() {
            // 1: cofaces
            if n + 2 <= s.max_level() {
                for j in 1..=n + 2 {
                    for i in 0..j {
                        let lhs = s.coface(j, &s.coface(i, g));
                        let rhs = s.coface(i, &s.coface(j - 1, g));
                        rec.check(1, &lhs, &rhs, || format!("sample {a} of level {n}, i={i}, j={j}"));
                    }
                }
            }
            // 2: codegeneracies
            if n >= 2 {
                for j in 0..=n - 2 {
                    for i in 0..=j {
                        let lhs = s.codegeneracy(j, &s.codegeneracy(i, g));
                        let rhs = s.codegeneracy(i, &s.codegeneracy(j + 1, g));
                        rec.check(2, &lhs, &rhs, || format!("sample {a} of level {n}, i={i}, j={j}"));
                    }
                }
            }
            // 3: mixed
            if n < s.max_level() {
                for i in 0..=n + 1 {
                    let d = s.coface(i, g);
                    for j in 0..=n {
                        let lhs = s.codegeneracy(j, &d);
                        let rhs = if i < j {
                            s.coface(i, &s.codegeneracy(j - 1, g))
                        } else if i == j || i == j + 1 {
                            g.clone()
                        } else {
                            s.coface(i - 1, &s.codegeneracy(j, g))
                        };
                        rec.check(3, &lhs, &rhs, || format!("sample {a} of level {n}, i={i}, j={j}"));
                    }
                }
            }
        }
    }
    for m in 0..=top {
        for n in 0..=top - m {
            for (a, x) in samples[m].iter().enumerate() {
                for (b, y) in samples[n].iter().enumerate() {
                    let xy = s.product(x, y);
                    let tag = |extra: String| format!("samples ({a} of level {m}, {b} of level {n}){extra}");
                    // 0: unit and associativity
                    rec.check(0, &s.product(&s.unit(0), x), x, || tag(" left unit".into()));
                    for k in 0..=top - m - n {
                        for (c, z) in samples[k].iter().enumerate() {
                            let lhs = s.product(&xy, z);
                            let rhs = s.product(x, &s.product(y, z));
                            rec.check(0, &lhs, &rhs, || tag(format!(" with {c} of level {k}")));
                        }
                    }
                    if m + n < s.max_level() {
                        for i in 0..=m {
                            let lhs = s.product(&s.coface(i, x), y);
                            rec.check(4, &lhs, &s.coface(i, &xy), || tag(format!(", i={i}")));
                        }
                        for i in 1..=n + 1 {
                            let lhs = s.product(x, &s.coface(i, y));
                            rec.check(5, &lhs, &s.coface(i + m, &xy), || tag(format!(", i={i}")));
                        }
                    }
                    for i in 0..m {
                        let lhs = s.product(&s.codegeneracy(i, x), y);
                        rec.check(6, &lhs, &s.codegeneracy(i, &xy), || tag(format!(", i={i}")));
                    }
                    for i in 0..n {
                        let lhs = s.product(x, &s.codegeneracy(i, y));
                        rec.check(7, &lhs, &s.codegeneracy(i + m, &xy), || tag(format!(", i={i}")));
                    }
                }
            }
        }
    }
    AxiomReport { results: rec.results }
}

/// `ω * ω = ∂¹ω`. For MC elements `σ⁰ω = 1` is asserted as well; a
/// violation is an internal inconsistency of the SDC.
pub fn mc_check<F: Scalar>(s: &dyn Sdc<F>, omega: &GroupCochain<F>) -> Result<bool> {
    if omega.level != 1 || !s.contains(omega) {
        return Ok(false);
    }
    if s.product(omega, omega) != s.coface(1, omega) {
        return Ok(false);
    }
    if !s.codegeneracy(0, omega).is_identity() {
        return Err(Error::Internal("Maurer–Cartan element with σ⁰(ω) ≠ 1".into()));
    }
    Ok(true)
}

/// `g * ω * g⁻¹`.
pub fn gauge_apply<F: Scalar>(s: &dyn Sdc<F>, g: &GroupCochain<F>, omega: &GroupCochain<F>) -> GroupCochain<F> {
    s.product(&s.product(g, omega), &s.inverse(g))
}

/// A gauge transformation carrying `omega` to `target`, or `None` if the two
/// Maurer–Cartan elements are not equivalent.
pub fn gauge_solve<F: Scalar>(
    s: &dyn Sdc<F>,
    omega: &GroupCochain<F>,
    target: &GroupCochain<F>,
) -> Result<Option<GroupCochain<F>>> {
    if !mc_check(s, omega)? || !mc_check(s, target)? {
        return Err(Error::InvalidInput("gauge_solve needs Maurer–Cartan elements".into()));
    }
    let g = s.gauge_solve_pinned(omega, target, &[])?;
    if let Some(g) = &g {
        if gauge_apply(s, g, omega) != *target {
            return Err(Error::Internal("gauge certificate does not verify".into()));
        }
    }
    Ok(g)
}

/// Gauge solving with the level-0 slot `fixed` held at the identity.
pub fn gauge_solve_pointed<F: Scalar>(
    s: &dyn Sdc<F>,
    omega: &GroupCochain<F>,
    target: &GroupCochain<F>,
    fixed: usize,
) -> Result<Option<GroupCochain<F>>> {
    if !mc_check(s, omega)? || !mc_check(s, target)? {
        return Err(Error::InvalidInput("gauge_solve needs Maurer–Cartan elements".into()));
    }
    s.gauge_solve_pinned(omega, target, &[fixed])
}

/// Fiber of a morphism over the base point: elements mapping to the identity.
pub struct FiberSdc<F: Scalar> {
    morphism: Arc<dyn SdcMorphism<F>>,
    tangent: Vec<Vec<usize>>,
}

/// Builds the fiber SDC, checking on samples that `phi` commutes with the
/// structure maps and the product.
pub fn fiber_sdc<F: Scalar>(phi: Arc<dyn SdcMorphism<F>>) -> Result<FiberSdc<F>> {
    let src = phi.source();
    let tgt = phi.target();
    let mut rng = <rand::rngs::StdRng as rand::SeedableRng>::seed_from_u64(7);
    let top = 2.min(src.max_level().saturating_sub(2));
    let samples = default_samples(src, top, 2, &mut rng);
    for (n, level) in samples.iter().enumerate() {
        for g in level {
            let pg = phi.apply(g);
            for i in 0..=n + 1 {
                if phi.apply(&src.coface(i, g)) != tgt.coface(i, &pg) {
                    return Err(Error::NotMorphism(format!("∂^{i} on level {n}")));
                }
            }
            for i in 0..n {
                if phi.apply(&src.codegeneracy(i, g)) != tgt.codegeneracy(i, &pg) {
                    return Err(Error::NotMorphism(format!("σ^{i} on level {n}")));
                }
            }
            for (m, other) in samples.iter().enumerate().take(top + 1 - n) {
                for h in other {
                    if phi.apply(&src.product(g, h)) != tgt.product(&pg, &phi.apply(h)) {
                        return Err(Error::NotMorphism(format!("product of levels {n} and {m}")));
                    }
                }
            }
        }
    }
    Ok(FiberSdc::unchecked(phi))
}

impl<F: Scalar> FiberSdc<F> {
    fn unchecked(morphism: Arc<dyn SdcMorphism<F>>) -> Self {
        let lin = morphism.with_coefficients(NilpotentAlgebra::abelian(1));
        let src = lin.source();
        let tangent = (0..=src.max_level())
            .map(|level| {
                src.tangent_slots(level)
                    .into_iter()
                    .filter(|&slot| {
                        let mut g = src.unit(level);
                        g.values[slot] = vec![F::one()];
                        lin.apply(&g).is_identity()
                    })
                    .collect()
            })
            .collect();
        FiberSdc { morphism, tangent }
    }

    pub fn morphism(&self) -> &Arc<dyn SdcMorphism<F>> {
        &self.morphism
    }
}

impl<F: Scalar> Sdc<F> for FiberSdc<F> {
    fn algebra(&self) -> &NilpotentAlgebra<F> {
        self.morphism.source().algebra()
    }

    fn slots(&self, level: usize) -> usize {
        self.morphism.source().slots(level)
    }

    fn max_level(&self) -> usize {
        self.morphism.source().max_level()
    }

    fn tangent_slots(&self, level: usize) -> Vec<usize> {
        self.tangent[level].clone()
    }

    fn contains(&self, g: &GroupCochain<F>) -> bool {
        self.morphism.source().contains(g) && self.morphism.apply(g).is_identity()
    }

    fn coface(&self, i: usize, g: &GroupCochain<F>) -> GroupCochain<F> {
        self.morphism.source().coface(i, g)
    }

    fn codegeneracy(&self, i: usize, g: &GroupCochain<F>) -> GroupCochain<F> {
        self.morphism.source().codegeneracy(i, g)
    }

    fn product(&self, g: &GroupCochain<F>, h: &GroupCochain<F>) -> GroupCochain<F> {
        self.morphism.source().product(g, h)
    }

    fn with_coefficients(&self, algebra: NilpotentAlgebra<F>) -> Box<dyn Sdc<F>> {
        Box::new(FiberSdc { morphism: self.morphism.with_coefficients(algebra), tangent: self.tangent.clone() })
    }

    fn gauge_solve_pinned(
        &self,
        omega: &GroupCochain<F>,
        target: &GroupCochain<F>,
        pinned: &[usize],
    ) -> Result<Option<GroupCochain<F>>> {
        let free = &self.tangent[0];
        let mut all: Vec<usize> = (0..self.slots(0)).filter(|v| free.binary_search(v).is_err()).collect();
        all.extend_from_slice(pinned);
        all.sort_unstable();
        all.dedup();
        self.morphism.source().gauge_solve_pinned(omega, target, &all)
    }
}

/// Linear map of a level-`n` operation at the tangent level, in slot coordinates.
pub(crate) fn linear_matrix<F: Scalar>(
    lin: &dyn Sdc<F>,
    from: usize,
    to: usize,
    op: impl Fn(&GroupCochain<F>) -> GroupCochain<F>,
) -> Matrix<F> {
    let cols: Vec<Vec<F>> = (0..lin.slots(from))
        .map(|slot| {
            let mut g = lin.unit(from);
            g.values[slot] = vec![F::one()];
            op(&g).values.into_iter().map(|v| v[0].clone()).collect()
        })
        .collect();
    Matrix::from_columns(lin.slots(to), &cols)
}
