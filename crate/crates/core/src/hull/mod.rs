//! The hull of the pointed deformation functor: a presentation
//! `L(H¹∨)/(f(H²∨))` computed by lifting the universal Maurer–Cartan element
//! one lower-central-series stage at a time.

mod contraction;
mod weights;

use crate::error::{Error, Result};
use crate::lie_core::{Alphabet, FreeLieAlgebra, Generator, LieElement, NilpotentAlgebra, Word};
use crate::linalg::{axpy_vec, is_zero_vec, sub_vec, to_sparse, Echelon, SparseVec};
use crate::presentations::{PresentedLie, Quotient};
use crate::scalar::Scalar;
use crate::sdc::{DgAlgebra, GroupCochain, Sdc, TangentComplex};

pub use contraction::ContractionData;
pub use weights::{pairing_nonfree_check, weight_report, NonFreeVerdict, WeightReport, WeightTable, WeightVerdict};

/// Highest class accepted by [`compute_hull`].
pub const HULL_CLASS_CAP: usize = 6;

/// A model of the pointed deformation problem: degree-1 and degree-2
/// cochains in fixed ambient coordinates, and the Maurer–Cartan defect of a
/// degree-1 cochain with values in a nilpotent algebra.
pub trait LiftModel<F: Scalar> {
    fn contraction(&self) -> Result<ContractionData<F>>;

    /// Defect of `ω` (one algebra element per degree-1 coordinate), one
    /// algebra element per degree-2 coordinate. Its linear part is `dω`.
    fn defect(&self, algebra: &NilpotentAlgebra<F>, omega: &[Vec<F>]) -> Result<Vec<Vec<F>>>;

    /// The cup product of degree-1 cochains.
    fn cup(&self, x: &[F], y: &[F]) -> Vec<F>;

    /// Weights of the ambient degree-1 and degree-2 coordinates, if graded.
    fn weights(&self) -> Option<(Vec<i64>, Vec<i64>)> {
        None
    }
}

/// The group-level model of a pointed SDC: `ω*ω` against `∂¹ω`.
pub struct SdcModel<'a, F: Scalar> {
    sdc: &'a dyn Sdc<F>,
    tangent: TangentComplex<F>,
}

impl<'a, F: Scalar> SdcModel<'a, F> {
    pub fn new(sdc: &'a dyn Sdc<F>) -> Self {
        SdcModel { sdc, tangent: TangentComplex::of(sdc, 3) }
    }

    pub fn tangent(&self) -> &TangentComplex<F> {
        &self.tangent
    }

    fn cochain(&self, s: &dyn Sdc<F>, values: &[Vec<F>]) -> GroupCochain<F> {
        let mut g = s.unit(1);
        for (v, &slot) in values.iter().zip(self.tangent.slots(1)) {
            g.values[slot] = v.clone();
        }
        g
    }
}

impl<F: Scalar> LiftModel<F> for SdcModel<'_, F> {
    fn contraction(&self) -> Result<ContractionData<F>> {
        ContractionData::from_tangent(&self.tangent)
    }

    fn defect(&self, algebra: &NilpotentAlgebra<F>, omega: &[Vec<F>]) -> Result<Vec<Vec<F>>> {
        let s = self.sdc.with_coefficients(algebra.clone());
        let s = s.as_ref();
        let w = self.cochain(s, omega);
        let lhs = s.product(&w, &w);
        let rhs = s.coface(1, &w);
        let values: Vec<Vec<F>> = lhs
            .values
            .iter()
            .zip(&rhs.values)
            .map(|(a, b)| algebra.group_multiply(a, &algebra.group_inverse(b)))
            .collect();
        let tangent = self.tangent.slots(2);
        for (slot, v) in values.iter().enumerate() {
            if tangent.binary_search(&slot).is_err() && !is_zero_vec(v) {
                return Err(Error::Internal(format!("defect leaves the SDC at slot {slot}")));
            }
        }
        Ok(tangent.iter().map(|&slot| values[slot].clone()).collect())
    }

    fn cup(&self, x: &[F], y: &[F]) -> Vec<F> {
        let heis = self.sdc.with_coefficients(NilpotentAlgebra::heisenberg());
        let heis = heis.as_ref();
        let g = self.tangent.to_cochain(heis, 1, x, &[F::one(), F::zero(), F::zero()]);
        let h = self.tangent.to_cochain(heis, 1, y, &[F::zero(), F::one(), F::zero()]);
        let gh = heis.product(&g, &h);
        self.tangent.slots(2).iter().map(|&slot| gh.values[slot][2].clone() * F::from_int(2)).collect()
    }
}

/// The DGLA model `A ⊗ 𝔤` of a dg-algebra with `A⁰` acting trivially:
/// defect `dω + ½ Σ (e_k e_l) ⊗ [ω_k, ω_l]`.
pub struct DgaModel<'a, F: Scalar> {
    algebra: &'a DgAlgebra<F>,
}

impl<'a, F: Scalar> DgaModel<'a, F> {
    pub fn new(algebra: &'a DgAlgebra<F>) -> Result<Self> {
        if algebra.top() < 2 {
            return Err(Error::InvalidInput("dg-algebra needs degrees 0..=2".into()));
        }
        if !algebra.is_weight_graded() {
            return Err(Error::WeightInhomogeneous("differential or product does not preserve weights".into()));
        }
        Ok(DgaModel { algebra })
    }
}

impl<F: Scalar> LiftModel<F> for DgaModel<'_, F> {
    fn contraction(&self) -> Result<ContractionData<F>> {
        ContractionData::from_dga(self.algebra)
    }

    fn defect(&self, algebra: &NilpotentAlgebra<F>, omega: &[Vec<F>]) -> Result<Vec<Vec<F>>> {
        let a = self.algebra;
        let d1 = a.differential(1).expect("top ≥ 2");
        let mut out = vec![algebra.zero(); a.dim(2)];
        for (r, slot) in out.iter_mut().enumerate() {
            for (k, w) in omega.iter().enumerate() {
                let c = d1.get(r, k);
                if !c.is_zero() {
                    axpy_vec(slot, c, w);
                }
            }
        }
        let half = F::one() / F::from_int(2);
        for k in 0..a.dim(1) {
            for l in 0..a.dim(1) {
                let prod = a.basis_product(1, k, 1, l).expect("top ≥ 2");
                if is_zero_vec(&prod) {
                    continue;
                }
                let br = algebra.bracket(&omega[k], &omega[l]);
                if is_zero_vec(&br) {
                    continue;
                }
                for (r, c) in prod.iter().enumerate() {
                    if !c.is_zero() {
                        axpy_vec(&mut out[r], &(half.clone() * c.clone()), &br);
                    }
                }
            }
        }
        Ok(out)
    }

    fn cup(&self, x: &[F], y: &[F]) -> Vec<F> {
        self.algebra.mul(1, x, 1, y).expect("top ≥ 2")
    }

    fn weights(&self) -> Option<(Vec<i64>, Vec<i64>)> {
        self.algebra.weights().map(|w| (w[1].clone(), w[2].clone()))
    }
}

/// Output of [`compute_hull`].
#[derive(Clone, Debug)]
pub struct HullResult<F: Scalar> {
    pub presentation: PresentedLie<F>,
    /// `f(ξ_j)` for each basis vector of `H²`.
    pub f: Vec<LieElement<F>>,
    /// `cup[j][i][k]`: the `ξ_j` coefficient of `[α_i ∪ α_k]`.
    pub cup: Vec<Vec<Vec<F>>>,
    pub weights: Option<WeightTable>,
}

impl<F: Scalar> HullResult<F> {
    pub fn h1_dim(&self) -> usize {
        self.presentation.alphabet().len()
    }

    pub fn h2_dim(&self) -> usize {
        self.f.len()
    }

    pub fn quotient_dims(&self) -> Vec<usize> {
        self.presentation.quotient_dims()
    }
}

/// The degree-2 part of each relation as an antisymmetric form on `H¹∨`:
/// `f(ξ_j)₂ = Σ_{i,k} form[j][i][k]·[a_i, a_k]`, so `form[j][i][k]` is half
/// the coefficient of `[a_i,a_k]` for `i < k`.
pub fn quadratic_part<F: Scalar>(hr: &HullResult<F>) -> Vec<Vec<Vec<F>>> {
    let r = hr.h1_dim();
    let half = F::one() / F::from_int(2);
    hr.f
        .iter()
        .map(|f| {
            let mut form = vec![vec![F::zero(); r]; r];
            for i in 0..r {
                for k in i + 1..r {
                    let c = f.coefficient(&Word::from_letters(&[i, k])) * half.clone();
                    form[k][i] = -c.clone();
                    form[i][k] = c;
                }
            }
            form
        })
        .collect()
}

/// Generator names for a hull: `a, b, c, …`.
fn generator_names(r: usize) -> Vec<String> {
    (0..r).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
}

fn check_class(class: usize) -> Result<()> {
    if class == 0 || class > HULL_CLASS_CAP {
        return Err(Error::ClassOutOfRange { class, cap: HULL_CLASS_CAP });
    }
    Ok(())
}

/// Hull of a pointed SDC, via the group-level defect.
pub fn compute_hull<F: Scalar>(s: &dyn Sdc<F>, class: usize, weights: Option<&WeightTable>) -> Result<HullResult<F>> {
    check_class(class)?;
    hull_of_model(&SdcModel::new(s), class, weights)
}

/// Hull of a pointed dg-algebra, via the DGLA defect.
pub fn compute_hull_dga<F: Scalar>(
    a: &DgAlgebra<F>,
    class: usize,
    weights: Option<&WeightTable>,
) -> Result<HullResult<F>> {
    check_class(class)?;
    hull_of_model(&DgaModel::new(a)?, class, weights)
}

fn weight_of(v: &[impl Scalar], weights: &[i64]) -> Option<i64> {
    let mut it = v.iter().zip(weights).filter(|(c, _)| !c.is_zero()).map(|(_, w)| *w);
    let first = it.next()?;
    it.all(|w| w == first).then_some(first)
}

/// Assigns weights to the harmonic bases, from the model's grading or from
/// a pure table.
fn assign_weights<F: Scalar>(
    model: &dyn LiftModel<F>,
    cd: &ContractionData<F>,
    table: Option<&WeightTable>,
) -> Result<Option<WeightTable>> {
    let graded = model.weights().map(|(w1, w2)| -> Result<WeightTable> {
        let h1 = cd.h1.iter().map(|v| weight_of(v, &w1)).collect::<Option<Vec<_>>>();
        let h2 = cd.h2.iter().map(|v| weight_of(v, &w2)).collect::<Option<Vec<_>>>();
        match (h1, h2) {
            (Some(h1), Some(h2)) => Ok(WeightTable { h1, h2 }),
            _ => Err(Error::Internal("harmonic representatives are not weight-homogeneous".into())),
        }
    });
    let graded = graded.transpose()?;
    match (table, graded) {
        (None, g) => Ok(g),
        (Some(t), Some(g)) => {
            if !t.same_multisets(&g) {
                return Err(Error::WeightInhomogeneous(format!(
                    "supplied weights {:?}/{:?} differ from the input grading {:?}/{:?}",
                    t.h1, t.h2, g.h1, g.h2
                )));
            }
            Ok(Some(g))
        }
        (Some(t), None) => {
            if t.h1.len() != cd.h1_dim() || t.h2.len() != cd.h2_dim() {
                return Err(Error::WeightInhomogeneous(format!(
                    "weight table has {}/{} entries for H¹/H² of dimension {}/{}",
                    t.h1.len(),
                    t.h2.len(),
                    cd.h1_dim(),
                    cd.h2_dim()
                )));
            }
            if !t.is_pure() {
                return Err(Error::WeightInhomogeneous(
                    "mixed weights need a weight-graded input; this input carries no grading".into(),
                ));
            }
            Ok(Some(t.clone()))
        }
    }
}

struct Stage<F: Scalar> {
    quotient: Quotient<F>,
    /// Quotient basis indices of degree `n`, and of degree `n-1`.
    top: Vec<usize>,
    below: Vec<usize>,
}

impl<F: Scalar> Stage<F> {
    fn new(alphabet: &Alphabet, n: usize, f: &[LieElement<F>]) -> Result<Self> {
        let free = FreeLieAlgebra::new(alphabet.clone(), n)?;
        let gens = free.generators::<F>();
        let mut rels = Vec::new();
        for g in &gens {
            for fj in f {
                rels.push(g.bracket(&fj.recast(&free)?)?);
            }
        }
        let quotient = Quotient::new(&free, &rels)?;
        let dim = quotient.algebra().dim();
        let top = (0..dim).filter(|&k| quotient.basis_word(k).len() == n).collect();
        let below = (0..dim).filter(|&k| quotient.basis_word(k).len() + 1 == n).collect();
        Ok(Stage { quotient, top, below })
    }

    fn algebra(&self) -> &NilpotentAlgebra<F> {
        self.quotient.algebra()
    }
}

/// Top-degree part of the defect relative to the current relations, one
/// scalar 2-cochain per degree-`n` basis vector.
fn residual<F: Scalar>(
    model: &dyn LiftModel<F>,
    cd: &ContractionData<F>,
    stage: &Stage<F>,
    omega: &[Vec<F>],
    f: &[Vec<F>],
) -> Result<Vec<Vec<F>>> {
    let alg = stage.algebra();
    let mut defect = model.defect(alg, omega)?;
    for (xi, fj) in cd.h2.iter().zip(f) {
        for (slot, c) in defect.iter_mut().zip(xi) {
            if !c.is_zero() {
                axpy_vec(slot, &-c.clone(), fj);
            }
        }
    }
    let ok = defect.iter().all(|v| v.iter().enumerate().all(|(k, c)| c.is_zero() || stage.top.binary_search(&k).is_ok()));
    if !ok {
        return Err(Error::Internal("Maurer–Cartan defect is not concentrated in the top degree".into()));
    }
    Ok(stage.top.iter().map(|&k| defect.iter().map(|v| v[k].clone()).collect()).collect())
}

/// `(κ, η)` for each top-degree basis vector; `κ` is indexed by `H²` basis.
fn split<F: Scalar>(cd: &ContractionData<F>, cochains: &[Vec<F>]) -> Result<Vec<(Vec<F>, Vec<F>)>> {
    cochains
        .iter()
        .map(|z| {
            cd.decompose2(z).map_err(|e| match e {
                Error::NotCocycle(m) => Error::Internal(format!("obstruction is not a cocycle ({m})")),
                other => other,
            })
        })
        .collect()
}

/// Flattens `κ` into one vector indexed by `(j, top basis vector)`.
fn flatten<F: Scalar>(parts: &[(Vec<F>, Vec<F>)], s: usize) -> Vec<F> {
    (0..s).flat_map(|j| parts.iter().map(move |(k, _)| k[j].clone())).collect()
}

fn hull_of_model<F: Scalar>(
    model: &dyn LiftModel<F>,
    class: usize,
    table: Option<&WeightTable>,
) -> Result<HullResult<F>> {
    let cd = model.contraction()?;
    let (r, s) = (cd.h1_dim(), cd.h2_dim());
    let weights = assign_weights(model, &cd, table)?;
    let gen_weights: Vec<u32> = match &weights {
        Some(w) => w
            .h1
            .iter()
            .map(|&x| u32::try_from(x).ok().filter(|&x| x > 0))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::WeightInhomogeneous("hull generators need positive weights".into()))?,
        None => vec![1; r],
    };
    let names = generator_names(r);
    let alphabet = Alphabet::new(names.iter().zip(&gen_weights).map(|(n, &w)| Generator::weighted(n.clone(), w)).collect())?;
    let free = FreeLieAlgebra::new(alphabet.clone(), class)?;
    let amb1 = cd.d1().ncols();
    let cup: Vec<Vec<Vec<F>>> = {
        let mut c = vec![vec![vec![F::zero(); r]; r]; s];
        for i in 0..r {
            for k in 0..r {
                let class = cd.class2(&model.cup(&cd.h1[i], &cd.h1[k]))?;
                for j in 0..s {
                    c[j][i][k] = class[j].clone();
                }
            }
        }
        c
    };
    // ω and f as free Lie elements at the full class
    let mut omega: Vec<LieElement<F>> = (0..amb1)
        .map(|k| {
            let terms: Vec<(Word, F)> =
                (0..r).filter(|&i| !cd.h1[i][k].is_zero()).map(|i| (Word::letter(i), cd.h1[i][k].clone())).collect();
            LieElement::from_parts(free.clone(), terms.into_iter().collect())
        })
        .collect();
    let mut f: Vec<LieElement<F>> = vec![free.zero(); s];
    if r > 0 {
        for n in 2..=class {
            let stage = Stage::new(&alphabet, n, &f)?;
            let q = &stage.quotient;
            let mut om: Vec<Vec<F>> = omega.iter().map(|x| Ok(q.project(&x.recast(q.free())?))).collect::<Result<_>>()?;
            let fv: Vec<Vec<F>> = f.iter().map(|x| Ok(q.project(&x.recast(q.free())?))).collect::<Result<_>>()?;
            let mut parts = split(&cd, &residual(model, &cd, &stage, &om, &fv)?)?;
            if n >= 3 && s > 0 && !stage.top.is_empty() {
                reduce_by_coordinate_change(model, &cd, &stage, &mut om, &fv, &mut parts)?;
            }
            // ω ← ω·exp(-η); f_j += κ_j
            for (b, (_, eta)) in stage.top.iter().zip(&parts) {
                for (k, e) in eta.iter().enumerate() {
                    if !e.is_zero() {
                        om[k][*b] = om[k][*b].clone() - e.clone();
                    }
                }
            }
            let mut fv = fv;
            for (j, fj) in fv.iter_mut().enumerate() {
                for (b, (kappa, _)) in stage.top.iter().zip(&parts) {
                    fj[*b] = fj[*b].clone() + kappa[j].clone();
                }
            }
            let check = residual(model, &cd, &stage, &om, &fv)?;
            if check.iter().any(|z| !is_zero_vec(z)) {
                return Err(Error::Internal(format!("lifted element is not Maurer–Cartan at stage {n}")));
            }
            omega = om.iter().map(|v| q.lift(v).recast(&free)).collect::<Result<_>>()?;
            f = fv.iter().map(|v| q.lift(v).recast(&free)).collect::<Result<_>>()?;
        }
    }
    if let Some(w) = &weights {
        for (j, fj) in f.iter().enumerate() {
            if fj.is_zero() {
                continue;
            }
            if fj.homogeneous_weight().map(i64::from) != Some(w.h2[j]) {
                return Err(Error::WeightInhomogeneous(format!(
                    "relation {} is not homogeneous of weight {}",
                    j + 1,
                    w.h2[j]
                )));
            }
        }
    }
    let presentation = PresentedLie::new(free, f.clone())?;
    Ok(HullResult { presentation, f, cup, weights })
}

/// Changes `ω` by `Σ α_i ⊗ y_i` with `y_i` of degree `n-1` to bring the new
/// relation terms `κ` into a normal form modulo the span of such changes.
fn reduce_by_coordinate_change<F: Scalar>(
    model: &dyn LiftModel<F>,
    cd: &ContractionData<F>,
    stage: &Stage<F>,
    om: &mut [Vec<F>],
    fv: &[Vec<F>],
    parts: &mut Vec<(Vec<F>, Vec<F>)>,
) -> Result<()> {
    let s = cd.h2_dim();
    let base = flatten(parts, s);
    let mut moves: Vec<(usize, usize)> = Vec::new();
    let mut span = Echelon::new();
    for (i, alpha) in cd.h1.iter().enumerate() {
        for &y in &stage.below {
            let mut trial = om.to_vec();
            for (k, a) in alpha.iter().enumerate() {
                if !a.is_zero() {
                    trial[k][y] = trial[k][y].clone() + a.clone();
                }
            }
            let delta = sub_vec(&flatten(&split(cd, &residual(model, cd, stage, &trial, fv)?)?, s), &base);
            let mut tag = SparseVec::new();
            tag.insert(moves.len(), F::one());
            moves.push((i, y));
            span.insert_tagged(to_sparse(&delta), tag);
        }
    }
    span.make_reduced();
    let (residue, comb) = span.reduce_tracked(&to_sparse(&base));
    if comb.is_empty() {
        return Ok(());
    }
    for (m, c) in &comb {
        let (i, y) = moves[*m];
        for (k, a) in cd.h1[i].iter().enumerate() {
            if !a.is_zero() {
                om[k][y] = om[k][y].clone() - c.clone() * a.clone();
            }
        }
    }
    *parts = split(cd, &residual(model, cd, stage, om, fv)?)?;
    if to_sparse(&flatten(parts, s)) != residue {
        return Err(Error::Internal("coordinate change did not act linearly on the obstruction".into()));
    }
    Ok(())
}

/// Class in `H²` of the defect of a lift `ω̃` of a Maurer–Cartan element
/// along a small extension with kernel spanned by the central vector `z`.
pub fn obstruction_class<F: Scalar>(
    s: &dyn Sdc<F>,
    cd: &ContractionData<F>,
    lift: &GroupCochain<F>,
    z: &[F],
) -> Result<Vec<F>> {
    let model = SdcModel::new(s);
    let alg = s.algebra();
    if (0..alg.dim()).any(|i| !is_zero_vec(&alg.bracket(z, &alg.unit(i)))) {
        return Err(Error::InvalidInput("kernel vector is not central".into()));
    }
    let values: Vec<Vec<F>> = model.tangent.slots(1).iter().map(|&slot| lift.values[slot].clone()).collect();
    let defect = model.defect(alg, &values)?;
    let pivot = z.iter().position(|c| !c.is_zero()).ok_or_else(|| Error::InvalidInput("zero kernel vector".into()))?;
    let scalar: Vec<F> = defect
        .iter()
        .map(|v| {
            let c = v[pivot].clone() / z[pivot].clone();
            let rest = sub_vec(v, &z.iter().map(|x| x.clone() * c.clone()).collect::<Vec<_>>());
            if is_zero_vec(&rest) {
                Ok(c)
            } else {
                Err(Error::InvalidInput("lift is not flat modulo the kernel".into()))
            }
        })
        .collect::<Result<_>>()?;
    cd.class2(&scalar)
}

/// `cd` for a pointed SDC.
pub fn contraction_of<F: Scalar>(s: &dyn Sdc<F>) -> Result<ContractionData<F>> {
    SdcModel::new(s).contraction()
}
