mod common;

use std::sync::Arc;

use common::{free_dim_oracle, q};
use malcev_core::ce::{ce_cohomology, CEComplex};
use malcev_core::envelope::{bch, expand};
use malcev_core::json;
use malcev_core::lie_core::{evaluate, witt_dimension, Word};
use malcev_core::linalg::{add_vec, is_zero_vec, neg_vec, scale_vec, sub_vec, to_sparse, Echelon};
use malcev_core::local_systems::{builders, CochainSdc};
use malcev_core::presentations::{PresentedLie, Quotient};
use malcev_core::sdc::{gauge_apply, mc_check, GroupCochain, Sdc};
use malcev_core::{FreeLieAlgebra, LieElement, NilpotentAlgebra, Q};
use proptest::prelude::*;

fn coeffs(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, n)
}

fn element(free: &Arc<FreeLieAlgebra>, cs: &[i64]) -> LieElement<Q> {
    let terms: Vec<(Word, Q)> = free.full_basis().into_iter().zip(cs).map(|(w, &c)| (w, q(c))).collect();
    free.element(terms).unwrap()
}

fn homogeneous(free: &Arc<FreeLieAlgebra>, degree: usize, cs: &[i64]) -> LieElement<Q> {
    let terms: Vec<(Word, Q)> = free.basis(degree).iter().cloned().zip(cs).map(|(w, &c)| (w, q(c))).collect();
    free.element(terms).unwrap()
}

fn free(rank: usize, class: usize) -> Arc<FreeLieAlgebra> {
    let names: Vec<String> = (0..rank).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    FreeLieAlgebra::on_names(&names, class).unwrap()
}

/// Free nilpotent algebra of class 3 on `a, b`, dimension 5.
fn l3() -> NilpotentAlgebra<Q> {
    Quotient::new(&free(2, 3), &[]).unwrap().algebra().clone()
}

fn qv(cs: &[i64]) -> Vec<Q> {
    cs.iter().map(|&c| q(c)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bracket_antisymmetric_and_jacobi(x in coeffs(14), y in coeffs(14), z in coeffs(14)) {
        let f = free(3, 3);
        let (x, y, z) = (element(&f, &x), element(&f, &y), element(&f, &z));
        prop_assert_eq!(x.bracket(&y).unwrap(), y.bracket(&x).unwrap().neg());
        let jac = x.bracket(&y.bracket(&z).unwrap()).unwrap()
            .add(&y.bracket(&z.bracket(&x).unwrap()).unwrap()).unwrap()
            .add(&z.bracket(&x.bracket(&y).unwrap()).unwrap()).unwrap();
        prop_assert!(jac.is_zero());
    }

    #[test]
    fn bracket_adds_degrees(p in 1usize..=3, qd in 1usize..=3, x in coeffs(8), y in coeffs(8)) {
        let f = free(2, 4);
        let (x, y) = (homogeneous(&f, p, &x), homogeneous(&f, qd, &y));
        let b = x.bracket(&y).unwrap();
        if !b.is_zero() {
            prop_assert_eq!(b.min_degree(), Some(p + qd));
            prop_assert_eq!(b.max_degree(), Some(p + qd));
        }
        prop_assert!(p + qd <= 4 || b.is_zero());
    }

    #[test]
    fn nilpotent_jacobi_and_group_law(x in coeffs(5), y in coeffs(5), z in coeffs(5)) {
        let n = l3();
        let (x, y, z) = (qv(&x), qv(&y), qv(&z));
        let jac = add_vec(&add_vec(&n.bracket(&x, &n.bracket(&y, &z)), &n.bracket(&y, &n.bracket(&z, &x))), &n.bracket(&z, &n.bracket(&x, &y)));
        prop_assert!(is_zero_vec(&jac));
        let left = n.group_multiply(&n.group_multiply(&x, &y), &z);
        let right = n.group_multiply(&x, &n.group_multiply(&y, &z));
        prop_assert_eq!(left, right);
        prop_assert!(is_zero_vec(&n.group_multiply(&x, &n.group_inverse(&x))));
    }

    #[test]
    fn evaluation_is_a_homomorphism(x in coeffs(5), y in coeffs(5), a in coeffs(5), b in coeffs(5)) {
        let f = free(2, 3);
        let n = l3();
        let assignment = vec![qv(&a), qv(&b)];
        let (x, y) = (element(&f, &x), element(&f, &y));
        let ex = evaluate(&x, &n, &assignment).unwrap();
        let ey = evaluate(&y, &n, &assignment).unwrap();
        prop_assert_eq!(evaluate(&x.bracket(&y).unwrap(), &n, &assignment).unwrap(), n.bracket(&ex, &ey));
        prop_assert_eq!(evaluate(&x.add(&y).unwrap(), &n, &assignment).unwrap(), add_vec(&ex, &ey));
    }

    #[test]
    fn witt_counts_match_brute_force(k in 1usize..=3, n in 1usize..=5) {
        prop_assert_eq!(witt_dimension(k, n) as usize, free_dim_oracle(k as u8, n));
        prop_assert_eq!(free(k, n).basis(n).len(), free_dim_oracle(k as u8, n));
    }

    #[test]
    fn lie_json_round_trip(x in coeffs(14)) {
        let f = free(3, 3);
        let x = element(&f, &x);
        prop_assert_eq!(json::lie_from_json_in(&json::lie_to_json(&x), &f).unwrap(), x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn bch_associative_and_primitive(x in coeffs(5), y in coeffs(5), z in coeffs(5)) {
        let f = free(2, 3);
        let (x, y, z) = (element(&f, &x), element(&f, &y), element(&f, &z));
        let xy = bch(&x, &y).unwrap();
        prop_assert!(expand(&xy).is_primitive());
        prop_assert_eq!(bch(&xy, &z).unwrap(), bch(&x, &bch(&y, &z).unwrap()).unwrap());
        prop_assert!(bch(&x, &x.neg()).unwrap().is_zero());
    }

    #[test]
    fn presentation_invariant_under_relation_basis_change(r in coeffs(3), s in coeffs(3), c in -3i64..=3) {
        let f = free(3, 3);
        let (r, s) = (homogeneous(&f, 2, &r), homogeneous(&f, 2, &s));
        let p = PresentedLie::new(f.clone(), vec![r.clone(), s.clone()]).unwrap();
        let p2 = PresentedLie::new(f.clone(), vec![r.add(&s.scale(&q(c))).unwrap(), s.scale(&q(2))]).unwrap();
        prop_assert_eq!(p.quotient_dims(), p2.quotient_dims());
        prop_assert!(p2.is_ideal_quadratic());
        let oracle = common::quotient_dims_oracle(3, &[(2, common::expand(&r)), (2, common::expand(&s))], 3);
        prop_assert_eq!(p.quotient_dims(), oracle);
    }

    #[test]
    fn gauge_action_closes_and_preserves_flatness(
        w in prop::collection::vec(coeffs(5), 8),
        g in prop::collection::vec(coeffs(5), 8),
        h in prop::collection::vec(coeffs(5), 8),
    ) {
        let k = Arc::new(builders::subdivided_wedge());
        let n = l3();
        let s = CochainSdc::new(k.clone(), n);
        let level0 = |cs: &[Vec<i64>]| GroupCochain { level: 0, values: (0..s.slots(0)).map(|i| qv(&cs[i % cs.len()])).collect() };
        let values: Vec<Vec<Q>> = (0..k.count(1)).map(|i| qv(&w[i % w.len()])).collect();
        let omega = s.edge_cochain(&values);
        prop_assert!(mc_check(&s, &omega).unwrap());
        let (g, h) = (level0(&g), level0(&h));
        let once = gauge_apply(&s, &h, &omega);
        prop_assert!(mc_check(&s, &once).unwrap());
        prop_assert_eq!(gauge_apply(&s, &g, &once), gauge_apply(&s, &s.product(&g, &h), &omega));
        prop_assert_eq!(gauge_apply(&s, &s.inverse(&h), &once), omega);
    }

    #[test]
    fn ce_d_squared_and_leibniz(rel in coeffs(2), a in coeffs(5), b in coeffs(5)) {
        let f = free(2, 3);
        let r = homogeneous(&f, 3, &rel);
        let n = Quotient::new(&f, &[r]).unwrap().algebra().clone();
        let cx = CEComplex::new(&n);
        prop_assert!(cx.d_squared_zero());
        let (a, b) = (qv(&a[..n.dim()]), qv(&b[..n.dim()]));
        let d1 = cx.differential(1);
        let lhs = cx.differential(2).mul_vec(&cx.wedge(1, &a, 1, &b));
        let rhs = sub_vec(&cx.wedge(2, &d1.mul_vec(&a), 1, &b), &cx.wedge(1, &a, 2, &d1.mul_vec(&b)));
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(cx.wedge(1, &a, 1, &b), neg_vec(&cx.wedge(1, &b, 1, &a)));
    }

    #[test]
    fn cup_antisymmetric_and_bilinear(a in coeffs(2), b in coeffs(2), c in -3i64..=3) {
        let h = ce_cohomology(&NilpotentAlgebra::<Q>::abelian(2));
        let comb = |cs: &[i64]| h.h1.iter().zip(cs).fold(vec![q(0); 2], |acc, (v, &c)| add_vec(&acc, &scale_vec(&q(c), v)));
        let (a, b) = (comb(&a), comb(&b));
        prop_assert_eq!(h.cup(&a, &b).unwrap(), neg_vec(&h.cup(&b, &a).unwrap()));
        let shifted = add_vec(&a, &scale_vec(&q(c), &b));
        prop_assert_eq!(h.cup(&shifted, &b).unwrap(), h.cup(&a, &b).unwrap());
    }

    #[test]
    fn massey_class_independent_of_bounding_cochains(
        abc in prop::collection::vec(coeffs(3), 3),
        alpha in coeffs(3),
        beta in coeffs(3),
    ) {
        // free 2-step nilpotent on three generators: every cup product is exact
        let n = Quotient::new(&free(3, 2), &[]).unwrap().algebra().clone();
        let h = ce_cohomology(&n);
        let cx = &h.complex;
        let comb = |cs: &[i64]| h.h1.iter().zip(cs).fold(vec![q(0); n.dim()], |acc, (v, &c)| add_vec(&acc, &scale_vec(&q(c), v)));
        let (a, b, c) = (comb(&abc[0]), comb(&abc[1]), comb(&abc[2]));
        let base = h.massey_triple(&a, &b, &c).unwrap();
        let u = h.bound(&neg_vec(&cx.wedge(1, &a, 1, &b))).unwrap();
        let v = h.bound(&neg_vec(&cx.wedge(1, &b, 1, &c))).unwrap();
        let other = h.massey_with(&a, &c, &add_vec(&u, &comb(&alpha)), &add_vec(&v, &comb(&beta))).unwrap();
        let mut span = Echelon::new();
        for i in &base.indeterminacy {
            span.insert(to_sparse(i));
        }
        prop_assert!(span.contains(&to_sparse(&sub_vec(&other.class, &base.class))));
        prop_assert_eq!(other.vanishes, base.vanishes);
    }
}

#[test]
fn degree_bracketing_for_words() {
    let f = free(2, 4);
    let w = Word::from_letters(&[0, 0, 1]);
    let x = f.basis_element::<Q>(w);
    assert_eq!(x.homogeneous_weight(), Some(3));
    assert_eq!(common::expand(&x), common::commutator(&common::letter(0), &common::commutator(&common::letter(0), &common::letter(1))));
}
