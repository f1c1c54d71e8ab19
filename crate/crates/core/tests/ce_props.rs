use hpt_core::algebra::int;
use hpt_core::ce::{
    ce_h0, check_cone_conditions, check_representation, to_gaussian_poly, validate_lie, CeComplex, CeElement,
    LieAlgebraData, MatrixAction, PolynomialAction,
};
use hpt_core::gaussian::d_poly;
use hpt_core::linalg::{unit_vector, Matrix};
use hpt_core::{GradedPoly, Rational};
use proptest::prelude::*;

const CONE_C: &str = "(c) H^-i = 0 for 1 <= i <= n";
const CONE_B: &str = "(b) H^0 = Q via E";

fn so3_blocks(with_trivial: bool) -> Vec<Matrix> {
    let m = if with_trivial { 4 } else { 3 };
    let standard = MatrixAction::so3_standard(with_trivial);
    (0..3)
        .map(|i| {
            let cols: Vec<Vec<Rational>> = (0..m)
                .map(|c| {
                    let e = unit_vector(m, c);
                    hpt_core::ce::LieModule::act(&standard, i, &e)
                })
                .collect();
            Matrix::from_columns(&cols, m)
        })
        .collect()
}

fn inverse(p: &Matrix) -> Option<Matrix> {
    let n = p.rows();
    let cols: Option<Vec<Vec<Rational>>> = (0..n).map(|j| p.solve(&unit_vector(n, j))).collect();
    cols.map(|c| Matrix::from_columns(&c, n))
}

fn invertible(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-2i64..=2, n * n)
        .prop_map(move |entries| {
            let rows: Vec<Vec<Rational>> = entries.chunks(n).map(|r| r.iter().map(|&x| int(x)).collect()).collect();
            Matrix::from_rows(rows, n)
        })
        .prop_filter("singular", move |p| p.rank() == n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    /// Conjugating a representation keeps it a representation, and then d^2 = 0.
    #[test]
    fn conjugated_so3_actions_square_to_zero(with_trivial in any::<bool>(), p3 in invertible(3), p4 in invertible(4)) {
        let lie = LieAlgebraData::so3();
        prop_assert!(validate_lie(&lie).passed());
        let p = if with_trivial { p4 } else { p3 };
        let p_inv = inverse(&p).unwrap();
        let m = p.rows();
        let matrices: Vec<Matrix> = so3_blocks(with_trivial).iter().map(|a| p.mul(a).mul(&p_inv)).collect();
        let action = MatrixAction::new(matrices, vec![int(0); m]).unwrap();
        prop_assert!(check_representation(&lie, &action, 0).passed());
        let ce = CeComplex::new(&lie, &action).unwrap();
        let report = ce.check_d_squared(0);
        prop_assert!(report.passed(), "{}", report);
    }

    /// Random matrices: whenever the bracket and the action are valid, d^2 = 0.
    #[test]
    fn valid_data_implies_d_squared(entries in prop::collection::vec(-1i64..=1, 3 * 4), dim in 1usize..=2) {
        let lie = LieAlgebraData::abelian(dim).unwrap();
        let matrices: Vec<Matrix> = entries
            .chunks(4)
            .take(dim)
            .map(|c| Matrix::from_rows(vec![vec![int(c[0]), int(c[1])], vec![int(c[2]), int(c[3])]], 2))
            .collect();
        let action = MatrixAction::new(matrices, vec![int(1), int(0)]).unwrap();
        let ce = CeComplex::new(&lie, &action).unwrap();
        let rep = check_representation(&lie, &action, 0).passed();
        let dd = ce.check_d_squared(0).passed();
        prop_assert!(!rep || dd, "representation holds but d^2 != 0");
        if dim == 2 {
            // commuting pairs are exactly the representations of the abelian algebra
            prop_assert_eq!(rep, dd);
        }
    }
}

#[test]
fn zero_action_oracles() {
    let lie = LieAlgebraData::so3();
    let zero = MatrixAction::zero_action(3, 1);
    let ce = CeComplex::new(&lie, &zero).unwrap();
    let x = CeElement::single(0b011, vec![int(1)]);
    assert_eq!(ce.d(&x), CeElement::single(0b100, vec![int(1)]));
    // no eta: d vanishes
    assert!(ce.d(&CeElement::single(0, vec![int(5)])).is_zero());
    assert_eq!(ce_h0(&lie, &zero, 0).unwrap().0, 1);
    let conditions = check_cone_conditions(&lie, &zero, 0).unwrap();
    assert!(!conditions.is_algebraic_cone);
    assert!(conditions.report.check(CONE_B).unwrap().passed);
    assert_eq!(conditions.cohomology[&-3], 1);

    let abelian = LieAlgebraData::abelian(1).unwrap();
    assert_eq!(ce_h0(&abelian, &MatrixAction::zero_action(1, 3), 0).unwrap().0, 3);
}

#[test]
fn lie_validation_oracles() {
    assert!(validate_lie(&LieAlgebraData::abelian(1).unwrap()).passed());
    assert!(validate_lie(&LieAlgebraData::so3()).passed());
    let mut f = vec![vec![Vec::new(); 3]; 3];
    f[0][1].push((2, int(2)));
    f[1][0].push((2, int(-1)));
    let report = validate_lie(&LieAlgebraData::new(3, f).unwrap());
    assert!(!report.check("antisymmetry").unwrap().passed);
    assert!(LieAlgebraData::abelian(7).is_err());
}

#[test]
fn abelian_translation_recovers_the_gaussian() {
    let lie = LieAlgebraData::abelian(1).unwrap();
    let action = PolynomialAction::gaussian_translation(1);
    let ce = CeComplex::new(&lie, &action).unwrap();
    for k in 0..=12 {
        for mask in [0u32, 1] {
            let x = CeElement::single(mask, GradedPoly::x_pow(k));
            let v = to_gaussian_poly(&x);
            assert_eq!(to_gaussian_poly(&ce.d(&x)), d_poly(&v));
        }
    }
    let c = check_cone_conditions(&lie, &action, 8).unwrap();
    assert!(c.is_algebraic_cone, "{}", c.report);
    let (dim, reps) = ce_h0(&lie, &action, 6).unwrap();
    assert_eq!((dim, reps), (1, vec![GradedPoly::one()]));
}

#[test]
fn designed_negative_fixtures_fail() {
    let lie = LieAlgebraData::abelian(1).unwrap();
    let zero = MatrixAction::zero_action(1, 2);
    let c = check_cone_conditions(&lie, &zero, 4).unwrap();
    assert!(!c.report.check(CONE_B).unwrap().passed);

    let lie2 = LieAlgebraData::abelian(2).unwrap();
    let doubled = PolynomialAction::gaussian_translation(2);
    let c = check_cone_conditions(&lie2, &doubled, 6).unwrap();
    assert!(!c.report.check(CONE_C).unwrap().passed);
    assert!(c.cohomology[&-1] > 0);
}
