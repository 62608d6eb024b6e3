//! Acceptance criteria 1–10, one PASS/FAIL line each. Run with
//! `cargo test --test acceptance`; exits nonzero if any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::{pointed, presentation_rep, q, random_vec};
use malcev_core::ce::{ce_cohomology, quadratic_obstruction_report, NOT_QUADRATIC};
use malcev_core::envelope::{bch, expand};
use malcev_core::hull::{
    compute_hull, contraction_of, obstruction_class, pairing_nonfree_check, quadratic_part, weight_report,
    WeightVerdict, WeightTable,
};
use malcev_core::lie_core::Word;
use malcev_core::local_systems::{
    builders, holonomy, pointed_sdc, rep_to_mc, CochainSdc, SimplicialSetFin,
};
use malcev_core::presentations::Quotient;
use malcev_core::sdc::{check_axioms, default_samples, gauge_apply, gauge_solve_pointed, random_element, GroupCochain, Sdc};
use malcev_core::{FreeLieAlgebra, LieElement, NilpotentAlgebra, Scalar, Q};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn c1() -> Check {
    let free = FreeLieAlgebra::on_names(&["x", "y"], 6).map_err(|e| e.to_string())?;
    let dims: Vec<u64> = free.graded_dims();
    let oracle: Vec<u64> = (1..=6).map(|n| common::free_dim_oracle(2, n) as u64).collect();
    ensure(dims == vec![2, 1, 2, 3, 6, 9], format!("dims {dims:?}"))?;
    ensure(dims == oracle, format!("oracle {oracle:?}"))?;
    Ok(format!("dims {dims:?} = brute-force ranks"))
}

fn random_lie(rng: &mut StdRng, free: &Arc<FreeLieAlgebra>) -> LieElement<Q> {
    let terms: Vec<(Word, Q)> = free
        .full_basis()
        .into_iter()
        .filter(|w| w.len() <= 2)
        .map(|w| (w, Q::new(rng.gen_range(-3..=3).into(), rng.gen_range(1..=3).into())))
        .collect();
    free.element(terms).unwrap()
}

fn c2() -> Check {
    let free = FreeLieAlgebra::on_names(&["x", "y"], 4).map_err(|e| e.to_string())?;
    let (x, y) = (free.generator::<Q>(0), free.generator::<Q>(1));
    let z = bch(&x, &y).map_err(|e| e.to_string())?;
    ensure(expand(&z).is_primitive(), "BCH(x,y) not primitive")?;
    ensure(z.coefficient(&Word::from_letters(&[0, 1])) == Q::ratio(1, 2), "degree-2 term is not ½[x,y]")?;
    ensure(z.graded_component(2) == x.bracket(&y).unwrap().scale(&Q::ratio(1, 2)), "degree-2 component")?;
    // against exp/log series computed independently
    let series = common::log_series(&common::mul(&common::exp_series(&common::letter(0), 4), &common::exp_series(&common::letter(1), 4)), 4);
    ensure(common::expand(&z) == series, "BCH disagrees with the exp/log series")?;
    let mut rng = StdRng::seed_from_u64(2);
    for t in 0..25 {
        let (a, b, c) = (random_lie(&mut rng, &free), random_lie(&mut rng, &free), random_lie(&mut rng, &free));
        let left = bch(&bch(&a, &b).unwrap(), &c).unwrap();
        let right = bch(&a, &bch(&b, &c).unwrap()).unwrap();
        ensure(left == right, format!("associativity fails on triple {t}"))?;
        ensure(expand(&left).is_primitive(), format!("triple {t} product not primitive"))?;
    }
    Ok("primitive, ½[x,y], associative on 25 triples".into())
}

fn c3() -> Check {
    let mut rng = StdRng::seed_from_u64(3);
    let mut n = 0;
    for k in [builders::torus().unwrap(), builders::genus_surface(2).unwrap()] {
        let s = CochainSdc::new(Arc::new(k), NilpotentAlgebra::<Q>::heisenberg());
        let samples = default_samples(&s, 2, 4, &mut rng);
        let report = check_axioms(&s, &samples);
        ensure(report.all_pass(), format!("{:?}", report.failures()))?;
        n += report.results.iter().map(|r| r.checked).sum::<usize>();
    }
    Ok(format!("all identities hold, {n} instances checked"))
}

fn coefficient_algebras() -> Vec<NilpotentAlgebra<Q>> {
    let free3 = FreeLieAlgebra::on_names(&["a", "b"], 3).unwrap();
    let l3 = Quotient::new(&free3, &[]).unwrap().algebra().clone();
    vec![NilpotentAlgebra::heisenberg(), l3]
}

/// A random pair of commuting elements: `v = t·u + central`.
fn commuting_pair(rng: &mut StdRng, alg: &NilpotentAlgebra<Q>) -> (Vec<Q>, Vec<Q>) {
    let u = random_vec(rng, alg.dim(), 2);
    let center = alg.center();
    let t = q(rng.gen_range(-2..=2));
    let mut v: Vec<Q> = u.iter().map(|c| c * &t).collect();
    for z in &center {
        let c = q(rng.gen_range(-2..=2));
        for (x, y) in v.iter_mut().zip(z) {
            *x += &c * y;
        }
    }
    (u, v)
}

/// Flat cochain on the 3×3 grid torus with holonomies `u`, `v`.
fn grid_flat(k: &SimplicialSetFin, alg: &NilpotentAlgebra<Q>, u: &[Q], v: &[Q]) -> GroupCochain<Q> {
    let s = CochainSdc::new(Arc::new(builders::grid_torus(3)), alg.clone());
    let uv = alg.group_multiply(u, v);
    let values: Vec<Vec<Q>> = k
        .names(1)
        .iter()
        .map(|n| match &n[..1] {
            "h" => u.to_vec(),
            "v" => v.to_vec(),
            _ => uv.clone(),
        })
        .collect();
    s.edge_cochain(&values)
}

fn c4() -> Check {
    let mut rng = StdRng::seed_from_u64(4);
    let spaces = [Arc::new(builders::subdivided_wedge()), Arc::new(builders::grid_torus(3))];
    let mut count = 0;
    for trial in 0..20 {
        let k = &spaces[trial % 2];
        let alg = &coefficient_algebras()[(trial / 2) % 2];
        let s = CochainSdc::new(k.clone(), alg.clone());
        let base = if trial % 2 == 0 {
            let values: Vec<Vec<Q>> = (0..k.count(1)).map(|_| random_vec(&mut rng, alg.dim(), 2)).collect();
            s.edge_cochain(&values)
        } else {
            let (u, v) = commuting_pair(&mut rng, alg);
            grid_flat(k, alg, &u, &v)
        };
        let mut g = random_element(&s, 0, &mut rng);
        g.values[k.basepoint()] = alg.zero();
        let omega = gauge_apply(&s, &g, &base);
        ensure(malcev_core::local_systems::flat_check(k, alg, &omega), format!("trial {trial}: not flat"))?;
        let rho = holonomy(k, alg, &omega).map_err(|e| e.to_string())?;
        let back = rep_to_mc(k, alg, &rho).map_err(|e| e.to_string())?;
        let rho2 = holonomy(k, alg, &back).map_err(|e| e.to_string())?;
        ensure(rho2.images == rho.images, format!("trial {trial}: holonomy ∘ rep_to_mc ≠ id"))?;
        let cert = gauge_solve_pointed(&s, &omega, &back, k.basepoint())
            .map_err(|e| e.to_string())?
            .ok_or(format!("trial {trial}: no pointed gauge"))?;
        ensure(cert.values[k.basepoint()].iter().all(num_traits::Zero::is_zero), "certificate not pointed")?;
        ensure(gauge_apply(&s, &cert, &omega) == back, format!("trial {trial}: certificate fails"))?;
        count += 1;
    }
    Ok(format!("{count} flat cochains, certificates verified"))
}

/// `cup[j][i][k]` from the simplicial formula, in the hull's `H²` basis.
fn cup_oracle(k: &Arc<SimplicialSetFin>) -> Vec<Vec<Vec<Q>>> {
    let s = pointed(k);
    let cd = contraction_of(&s).unwrap();
    let t = malcev_core::sdc::TangentComplex::of(&s, 3);
    let on_edges = |v: &[Q]| -> BTreeMap<usize, Q> { t.slots(1).iter().zip(v).map(|(&s, c)| (s, c.clone())).collect() };
    let r = cd.h1_dim();
    let mut out = vec![vec![vec![q(0); r]; r]; cd.h2_dim()];
    for i in 0..r {
        for kk in 0..r {
            let z = common::simplicial_cup(k, &on_edges(&cd.h1[i]), &on_edges(&cd.h1[kk]), t.slots(2));
            for (j, c) in cd.class2(&z).unwrap().into_iter().enumerate() {
                out[j][i][kk] = c;
            }
        }
    }
    out
}

fn c5() -> Check {
    let k = Arc::new(builders::torus().unwrap());
    let hr = compute_hull(&pointed(&k), 4, None).map_err(|e| e.to_string())?;
    ensure(hr.quotient_dims() == vec![2, 0, 0, 0], format!("quotient dims {:?}", hr.quotient_dims()))?;
    let oracle = cup_oracle(&k);
    ensure(oracle[0][0][1] != q(0), "oracle cup vanishes")?;
    let half: Vec<Vec<Vec<Q>>> =
        oracle.iter().map(|m| m.iter().map(|r| r.iter().map(|c| c * Q::ratio(1, 2)).collect()).collect()).collect();
    ensure(quadratic_part(&hr) == half, format!("quadratic part {:?} vs ½ cup {:?}", quadratic_part(&hr), half))?;
    Ok(format!("dims (2,0,0,0), quadratic part = ½ cup = {}", half[0][0][1]))
}

fn c6() -> Check {
    let k = Arc::new(builders::genus_surface(2).unwrap());
    let hr = compute_hull(&pointed(&k), 3, None).map_err(|e| e.to_string())?;
    ensure(hr.f.len() == 1, format!("{} relations", hr.f.len()))?;
    ensure(hr.presentation.is_ideal_quadratic(), "ideal not quadratic")?;
    let r = common::add(&common::commutator(&common::letter(0), &common::letter(1)), &common::commutator(&common::letter(2), &common::letter(3)), &q(1));
    let oracle = common::quotient_dims_oracle(4, &[(2, r)], 3);
    ensure(hr.quotient_dims() == oracle, format!("{:?} vs oracle {oracle:?}", hr.quotient_dims()))?;
    Ok(format!("one quadratic relation, dims {oracle:?}"))
}

fn c7() -> Check {
    let r = weight_report(&WeightTable::smooth_proper(4, 1));
    ensure(r.verdict == WeightVerdict::Quadratic && r.lengths == [2].into(), format!("{r:?}"))?;
    let r = weight_report(&WeightTable { h1: vec![1, 2], h2: vec![2, 3, 4] });
    ensure(r.lengths == [2, 3, 4].into(), format!("{r:?}"))?;
    Ok("quadratic; lengths {2,3,4}".into())
}

fn c8() -> Check {
    let heis = NilpotentAlgebra::<Q>::heisenberg();
    let h = ce_cohomology(&heis);
    ensure(h.dims[1] == 2, format!("H¹ = {}", h.dims[1]))?;
    ensure(h.cup_matrix().iter().flatten().all(|c| c.iter().all(num_traits::Zero::is_zero)), "cup nonzero")?;
    let (x, y) = (vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)]);
    let m = h.massey_triple(&x, &x, &y).map_err(|e| e.to_string())?;
    ensure(!m.vanishes && m.indeterminacy.is_empty(), format!("{m:?}"))?;
    let r = quadratic_obstruction_report(&heis);
    ensure(r.verdict == NOT_QUADRATIC, r.verdict)?;
    Ok(format!("⟨x∨,x∨,y∨⟩ = {}, verdict {}", h.complex.format(2, &m.representative), r.verdict))
}

fn c9() -> Check {
    let hr = compute_hull(&pointed(&Arc::new(builders::genus_surface(2).unwrap())), 3, None).map_err(|e| e.to_string())?;
    let v = pairing_nonfree_check(&hr.cup, hr.h1_dim()).map_err(|e| e.to_string())?;
    ensure(v.nondegenerate && v.not_free, format!("{v:?}"))?;
    let (qd, fd) = (v.quotient_dims.unwrap(), v.free_dims.unwrap());
    ensure(qd[..2] == [4, 5] && fd[..2] == [4, 6], format!("{qd:?} vs {fd:?}"))?;
    Ok(format!("{qd:?} ≠ free {fd:?}"))
}

/// `(N', N, z)`: a central extension by `z` presented over one free algebra.
fn small_extensions() -> Vec<(Quotient<Q>, Quotient<Q>, Vec<Q>)> {
    let mut out = Vec::new();
    let f2 = FreeLieAlgebra::on_names(&["a", "b"], 2).unwrap();
    let heis = Quotient::new(&f2, &[]).unwrap();
    let ab = Quotient::new(&f2, &[f2.basis_element(Word::from_letters(&[0, 1]))]).unwrap();
    let z = heis.project(&f2.basis_element(Word::from_letters(&[0, 1])));
    out.push((heis, ab, z));
    let f3 = FreeLieAlgebra::on_names(&["a", "b"], 3).unwrap();
    let abb = f3.basis_element(Word::from_letters(&[0, 1, 1]));
    let aab = f3.basis_element(Word::from_letters(&[0, 0, 1]));
    let big = Quotient::new(&f3, std::slice::from_ref(&abb)).unwrap();
    let small = Quotient::new(&f3, &[abb, aab.clone()]).unwrap();
    let z = big.project(&aab);
    out.push((big, small, z));
    out
}

fn c10() -> Check {
    let mut rng = StdRng::seed_from_u64(10);
    let torus = Arc::new(builders::torus().unwrap());
    let genus = Arc::new(
        builders::presentation_complex(
            &["a", "b", "c", "d"].map(String::from),
            &["abABcdCD".chars().map(|c| c.to_string()).collect()],
        )
        .unwrap(),
    );
    let exts = small_extensions();
    let mut nonzero = 0;
    for trial in 0..20 {
        let (big, small, z) = &exts[trial % 2];
        let (k, gens, rel): (&Arc<SimplicialSetFin>, Vec<&str>, &str) =
            if trial % 4 < 2 { (&torus, vec!["x", "y"], "xyXY") } else { (&genus, vec!["a", "b", "c", "d"], "abABcdCD") };
        let alg = small.algebra();
        let images: Vec<Vec<Q>> = if gens.len() == 2 {
            let (u, v) = commuting_pair(&mut rng, alg);
            vec![u, v]
        } else {
            let (u, v) = (random_vec(&mut rng, alg.dim(), 2), random_vec(&mut rng, alg.dim(), 2));
            vec![u.clone(), v.clone(), v, u]
        };
        let rho = presentation_rep(k, alg, &gens, &[rel], &images);
        let omega = rep_to_mc(k, alg, &rho).map_err(|e| format!("trial {trial}: {e}"))?;
        let s = pointed_sdc(k.clone(), big.algebra().clone());
        let cd = contraction_of(&pointed(k)).map_err(|e| e.to_string())?;
        let mut lift = || -> GroupCochain<Q> {
            let mut g = s.unit(1);
            for e in 0..k.count(1) {
                let x = big.project(&small.lift(&omega.values[e]));
                let c = q(rng.gen_range(-3..=3));
                g.values[e] = x.iter().zip(z).map(|(a, b)| a + &c * b).collect();
            }
            g
        };
        let (l1, l2) = (lift(), lift());
        let c1 = obstruction_class(&s, &cd, &l1, z).map_err(|e| format!("trial {trial}: {e}"))?;
        let c2 = obstruction_class(&s, &cd, &l2, z).map_err(|e| format!("trial {trial}: {e}"))?;
        ensure(c1 == c2, format!("trial {trial}: classes {c1:?} ≠ {c2:?}"))?;
        if c1.iter().any(|c| !num_traits::Zero::is_zero(c)) {
            nonzero += 1;
        }
    }
    Ok(format!("20 extensions agree ({nonzero} with nonzero class)"))
}

fn main() {
    let criteria: [(&str, fn() -> Check, Duration); 10] = [
        ("Witt dimensions", c1, Duration::from_secs(5)),
        ("BCH", c2, Duration::from_secs(10)),
        ("SDC axiom suite", c3, Duration::from_secs(30)),
        ("representation correspondence", c4, Duration::from_secs(120)),
        ("torus hull", c5, Duration::from_secs(120)),
        ("genus-2 hull", c6, Duration::from_secs(60)),
        ("weight corollaries", c7, Duration::from_secs(1)),
        ("Heisenberg exclusion", c8, Duration::from_secs(1)),
        ("non-freeness", c9, Duration::from_secs(120)),
        ("obstruction well-definedness", c10, Duration::from_secs(120)),
    ];
    let mut failed = 0;
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > *limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            o => o,
        };
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{elapsed:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
