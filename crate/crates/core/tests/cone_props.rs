use hpt_core::algebra::{int, rat};
use hpt_core::cone::{
    build_algebraic_cone, decompose, degree_zero_basis, homology_ranks, ordinary_space, truncated_cumulant,
    verify_cone, TruncatedSpace,
};
use hpt_core::gaussian::truncated_space;
use hpt_core::linalg::{unit_vector, Vector};
use hpt_core::Rational;
use proptest::prelude::*;

/// Positive rational probabilities summing to one.
fn probabilities() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(1i64..=9, 1..=5).prop_map(|w| {
        let total: i64 = w.iter().sum();
        w.into_iter().map(|x| rat(x, total)).collect()
    })
}

fn elements(dim: usize) -> impl Strategy<Value = Vec<Vector>> {
    prop::collection::vec(prop::collection::vec((-3i64..=3, 1i64..=2), dim), 1..=6).prop_map(|vs| {
        vs.into_iter()
            .map(|v| v.into_iter().map(|(n, d)| rat(n, d)).collect())
            .collect()
    })
}

fn space_with_elements() -> impl Strategy<Value = (Vec<Rational>, Vec<Vector>)> {
    probabilities().prop_flat_map(|p| {
        let dim = p.len();
        (Just(p), elements(dim))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_ordinary_cones((probs, elems) in space_with_elements()) {
        let v = ordinary_space(&probs).unwrap();
        let cone = build_algebraic_cone(&v).unwrap();
        let dim = v.dim();
        prop_assert_eq!(cone.space.dim(), 2 * dim - 1);

        let ranks = homology_ranks(&cone.space);
        prop_assert_eq!(ranks.get(&0).copied().unwrap_or(0), 1);
        prop_assert_eq!(ranks.get(&-1).copied().unwrap_or(0), 0);

        // E_CV o inclusion = E_V, column by column
        for i in 0..dim {
            let e = unit_vector(dim, i);
            prop_assert_eq!(cone.space.expectation(&cone.inclusion.apply(&e)), v.expectation(&e));
        }

        let report = verify_cone(&cone, &elems, 5).unwrap();
        prop_assert!(report.passed(), "{}", report);
        for word in [vec![0, 0], vec![0, 0, 0]] {
            let images: Vec<Vector> = elems.iter().map(|e| cone.inclusion.apply(e)).collect();
            prop_assert_eq!(
                truncated_cumulant(&v, &elems, &word).unwrap(),
                truncated_cumulant(&cone.space, &images, &word).unwrap()
            );
        }
    }

    #[test]
    fn json_roundtrip(probs in probabilities()) {
        let v = ordinary_space(&probs).unwrap();
        let back = TruncatedSpace::try_from(&v.to_json()).unwrap();
        prop_assert_eq!(back, v);
    }
}

#[test]
fn decomposition_oracles() {
    let v = ordinary_space(&[rat(1, 5), rat(2, 5), rat(2, 5)]).unwrap();
    assert_eq!(decompose(&v).dims(), (3, 0, 0));
    let g = truncated_space(4);
    let dec = decompose(&g);
    assert_eq!(dec.dims(), (1, 5, 5));
    assert_eq!(dec.h[0], unit_vector(g.dim(), g.unit()));
    let point = ordinary_space(&[int(1)]).unwrap();
    assert_eq!(decompose(&point).dims(), (1, 0, 0));
}

#[test]
fn homology_oracles() {
    let ranks = homology_ranks(&truncated_space(6));
    assert_eq!(ranks.get(&-1), Some(&0));
    assert_eq!(ranks.get(&0), Some(&1));
    let flat = ordinary_space(&vec![rat(1, 5); 5]).unwrap();
    assert_eq!(homology_ranks(&flat).get(&0), Some(&5));
}

#[test]
fn cone_oracles() {
    let two = ordinary_space(&[rat(1, 2), rat(1, 2)]).unwrap();
    let cone = build_algebraic_cone(&two).unwrap();
    assert_eq!(cone.space.dim(), 3);
    assert_eq!(cone.k, vec![vec![rat(-1, 2), int(1)]]);
    let ranks = homology_ranks(&cone.space);
    assert_eq!((ranks.get(&0), ranks.get(&-1)), (Some(&1), Some(&0)));
    let delta = vec![unit_vector(2, 1)];
    assert_eq!(truncated_cumulant(&two, &delta, &[0, 0]).unwrap(), rat(1, 4));
    let image = vec![cone.inclusion.apply(&delta[0])];
    assert_eq!(truncated_cumulant(&cone.space, &image, &[0, 0]).unwrap(), rat(1, 4));
    assert!(verify_cone(&cone, &delta, 6).unwrap().passed());

    let point = ordinary_space(&[int(1)]).unwrap();
    let cone = build_algebraic_cone(&point).unwrap();
    assert_eq!(cone.space, point);
    assert!(verify_cone(&cone, &degree_zero_basis(&point), 4).unwrap().passed());

    let three = ordinary_space(&[rat(1, 2), rat(1, 4), rat(1, 4)]).unwrap();
    assert_eq!(build_algebraic_cone(&three).unwrap().space.dim(), 5);
}

#[test]
fn negative_controls() {
    let v = ordinary_space(&[rat(1, 3), rat(2, 3)]).unwrap();
    let cone = build_algebraic_cone(&v).unwrap();
    let elems = degree_zero_basis(&v);
    let broken = cone.without_shift_differential().unwrap();
    let report = verify_cone(&broken, &elems, 4).unwrap();
    assert!(!report.check("CV is contractible").unwrap().passed);
    assert!(report.check("inclusion is an algebra map").unwrap().passed);
    let unzeroed = cone.with_product_not_zeroed();
    assert!(
        verify_cone(&unzeroed, &elems, 4)
            .unwrap()
            .check("inclusion is an algebra map")
            .unwrap()
            .passed
    );
}

#[test]
fn invalid_spaces_are_rejected() {
    assert!(ordinary_space(&[rat(1, 2), rat(1, 3)]).is_err());
    let v = ordinary_space(&[rat(1, 2), rat(1, 2)]).unwrap();
    let mut json = v.to_json();
    json.unit = 1;
    assert!(TruncatedSpace::try_from(&json).is_err());
}
