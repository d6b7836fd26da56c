use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::algebra::radical_sc;
use crate::module::tests::a2_modules;
use crate::module::{direct_sum, power};
use crate::resolution::projectives;
use crate::samples;

#[test]
fn fitting_examples() {
    let (_, [p1, _, s1, s2]) = a2_modules();
    let id = ModMorphism::identity(&p1);
    assert!(fitting_split(&p1, &id).unwrap().is_none());
    let z = ModMorphism::zero(&p1, &p1);
    assert!(fitting_split(&p1, &z).unwrap().is_none());
    let ds = direct_sum(s1.alg(), &[s1.clone(), s2.clone()]).unwrap();
    let e = ModMorphism::new(
        ds.module.clone(),
        ds.module.clone(),
        ds.injections[0].mul(&ds.projections[0]),
    )
    .unwrap();
    let sp = fitting_split(&ds.module, &e).unwrap().unwrap();
    let dv: Vec<_> = sp.parts.iter().map(|m| m.dim_vector().unwrap()).collect();
    assert!(dv.contains(&vec![1, 0]) && dv.contains(&vec![0, 1]));
}

#[test]
fn decompose_examples() {
    let qa = samples::a2(2);
    let reg = ActionModule::regular(qa.sc());
    let d = decompose(&reg, 0).unwrap();
    assert_eq!(d.classes.len(), 2);
    assert!(d.classes.iter().all(|c| c.multiplicity == 1));
    let dims: Vec<usize> = d.classes.iter().map(|c| c.representative.dim()).collect();
    assert_eq!(dims, vec![1, 2]);

    let (_, [_, _, s1, _]) = a2_modules();
    let d = decompose(&power(&s1, 3), 0).unwrap();
    assert_eq!(d.classes.len(), 1);
    assert_eq!(d.classes[0].multiplicity, 3);

    let aus = samples::a2_auslander(2);
    let d = decompose(&ActionModule::regular(aus.sc()), 0).unwrap();
    let mut dims: Vec<usize> = d.summands.iter().map(|s| s.module.dim()).collect();
    dims.sort();
    assert_eq!(dims, vec![1, 2, 2]);
}

#[test]
fn decomposition_maps_are_complementary() {
    let aus = samples::a2_auslander(2);
    let x = ActionModule::regular(aus.sc());
    let d = decompose(&x, 7).unwrap();
    let p = x.p();
    let mut sum = FieldMat::zeros(p, x.dim(), x.dim());
    for s in &d.summands {
        assert!(s.projection.mul(&s.inclusion).is_identity());
        ModMorphism::new(s.module.clone(), x.clone(), s.inclusion.clone()).unwrap();
        sum = sum.add(&s.inclusion.mul(&s.projection));
    }
    assert!(sum.is_identity());
}

#[test]
fn extension_field_endomorphisms_are_certified() {
    // GF(4) as a module over itself via a 2x2 companion matrix: End/rad = GF(4)
    let t = vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 1]]];
    let a = Arc::new(SCAlgebra::new(2, 2, t, vec![1, 0]).unwrap());
    let x = ActionModule::regular(&a);
    let d = decompose(&x, 0).unwrap();
    assert_eq!(d.summands.len(), 1);
    assert_eq!(d.classes[0].certificate.field_degree, 2);
    let d2 = decompose(&power(&x, 2), 3).unwrap();
    assert_eq!(d2.classes.len(), 1);
    assert_eq!(d2.classes[0].multiplicity, 2);
}

#[test]
fn isomorphism_examples() {
    let (_, [p1, _, s1, s2]) = a2_modules();
    assert!(is_isomorphic(&p1, &p1, 16).unwrap());
    assert!(!is_isomorphic(&s1, &s2, 16).unwrap());
    let t = FieldMat::from_rows(2, &[vec![1, 1], vec![0, 1]], 2).unwrap();
    let c = p1.conjugate(&t).unwrap();
    let f = find_isomorphism(&p1, &c, 16).unwrap().unwrap();
    ModMorphism::new(p1.clone(), c, f).unwrap();
}

#[test]
fn decisive_route_when_random_search_is_disabled() {
    let qa = samples::truncated(2, 3);
    let reg = crate::krull_schmidt::enumerate_indecomposables(qa.sc(), 3, 1 << 20).unwrap();
    let ms = reg.modules();
    let x = direct_sum(qa.sc(), &[ms[0].clone(), ms[1].clone(), ms[2].clone(), ms[1].clone()])
        .unwrap()
        .module;
    let y = direct_sum(qa.sc(), &[ms[1].clone(), ms[2].clone(), ms[1].clone(), ms[0].clone()])
        .unwrap()
        .module;
    let f = find_isomorphism(&x, &y, 0).unwrap().unwrap();
    ModMorphism::new(x, y, f).unwrap();
}

#[test]
fn enumeration_counts() {
    let cases: Vec<(Arc<SCAlgebra>, usize, usize)> = vec![
        (samples::a2(2).to_sc(), 2, 3),
        (samples::a3_sink(2).to_sc(), 3, 6),
        (samples::truncated(2, 2).to_sc(), 2, 2),
        (samples::truncated(2, 3).to_sc(), 3, 3),
        (samples::truncated(2, 4).to_sc(), 4, 4),
        (samples::a2_auslander(2).to_sc(), 3, 5),
    ];
    for (alg, cap, count) in cases {
        let reg = enumerate_indecomposables(&alg, cap, 1 << 24).unwrap();
        assert_eq!(reg.len(), count);
        assert!(reg.complete);
    }
}

#[test]
fn enumeration_flags_truncation() {
    let alg = samples::truncated(2, 3).to_sc();
    let reg = enumerate_indecomposables(&alg, 2, 1 << 20).unwrap();
    assert_eq!(reg.len(), 2);
    assert!(!reg.complete);
    assert!(matches!(
        enumerate_indecomposables(&alg, 3, 16),
        Err(Error::BudgetExceeded { .. })
    ));
}

#[test]
fn structure_for_bare_tables() {
    let ut = compute_structure(&samples::upper_triangular(2), 0).unwrap();
    assert_eq!(ut.idempotents().unwrap().elements.len(), 2);
    assert_eq!(ut.radical().unwrap().cols(), 1);
    let ut = Arc::new(ut);
    assert_eq!(enumerate_indecomposables(&ut, 2, 1 << 20).unwrap().len(), 3);
    let m2 = compute_structure(&samples::matrix2(2), 0).unwrap();
    let idem = m2.idempotents().unwrap();
    assert_eq!(idem.elements.len(), 2);
    assert_eq!(idem.class_count(), 1);
    assert_eq!(projectives(&Arc::new(m2)).unwrap().len(), 1);
}

#[test]
fn end_radical_matches_block_formula() {
    let alg = samples::truncated(2, 3).to_sc();
    let reg = enumerate_indecomposables(&alg, 3, 1 << 20).unwrap();
    let ms = reg.modules();
    let x = direct_sum(&alg, &[ms[1].clone(), ms[2].clone(), ms[2].clone()])
        .unwrap()
        .module;
    let d = decompose(&x, 0).unwrap();
    let (end, _) = end_algebra_sc(&x).unwrap();
    let rad = radical_sc(&end).unwrap();
    // off-diagonal blocks between non-isomorphic summands plus diagonal radicals
    let mut expected = 0;
    for a in &d.summands {
        for b in &d.summands {
            let h = crate::module::hom_dim(&a.module, &b.module).unwrap();
            if a.class == b.class {
                let c = &d.classes[a.class].certificate;
                expected += h - c.field_degree;
            } else {
                expected += h;
            }
        }
    }
    assert_eq!(rad.cols(), expected);
}

fn a2_rep_strategy() -> impl Strategy<Value = crate::module::QuiverRep> {
    (0usize..3, 0usize..3).prop_flat_map(|(d1, d2)| {
        proptest::collection::vec(0u32..2, d1 * d2).prop_map(move |e| crate::module::QuiverRep {
            dims: vec![d1, d2],
            maps: vec![FieldMat::from_vec(2, d2, d1, e)],
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn doubling_doubles_multiplicities(r in a2_rep_strategy(), seed in 0u64..1000) {
        let qa = samples::a2(2);
        let x = r.to_action(&qa).unwrap();
        prop_assume!(!x.is_zero());
        let d1 = decompose(&x, seed).unwrap();
        let d2 = decompose(&power(&x, 2), seed.wrapping_add(1)).unwrap();
        let doubled: Vec<_> = d1.multiset().into_iter().map(|(f, m)| (f, 2 * m)).collect();
        prop_assert_eq!(d2.multiset(), doubled);
        prop_assert_eq!(d1.total_dim(), x.dim());
    }

    #[test]
    fn conjugation_invariance(r in a2_rep_strategy(), e in proptest::collection::vec(0u32..2, 16)) {
        let qa = samples::a2(2);
        let x = r.to_action(&qa).unwrap();
        let n = x.dim();
        prop_assume!(n > 0);
        let t = FieldMat::from_vec(2, n, n, e[..n * n].to_vec());
        prop_assume!(t.is_invertible());
        let y = x.conjugate(&t).unwrap();
        prop_assert_eq!(decompose(&x, 0).unwrap().multiset(), decompose(&y, 0).unwrap().multiset());
        prop_assert_eq!(crate::module::hom_dim(&x, &x).unwrap(), crate::module::hom_dim(&y, &y).unwrap());
        prop_assert!(is_isomorphic(&x, &y, 8).unwrap());
    }
}
