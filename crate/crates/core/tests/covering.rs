mod common;

use bielliptic::arith::matrix::{determinant, Matrix};
use bielliptic::arith::rational::{frac, rat, Rational};
use bielliptic::covering::{
    build_four_covering, four_covering_forms, resolvent_jacobian, two_covering_quadrics, BinaryQuarticForm,
    QuadricIntersectionModel, QuarticCurveModel,
};
use bielliptic::ecq::ShortWeierstrassCurve;
use bielliptic::numfield::QuarticElement;
use bielliptic::Error;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn quad(m: &Matrix, x: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for i in 0..4 {
        for j in 0..4 {
            acc += &m[i][j] * &x[i] * &x[j];
        }
    }
    acc
}

fn combo(q: &QuadricIntersectionModel, l: &Rational, m: &Rational) -> Matrix {
    (0..4)
        .map(|i| (0..4).map(|j| l * &q.m1()[i][j] + m * &q.m2()[i][j]).collect())
        .collect()
}

fn form(c: [i64; 5]) -> BinaryQuarticForm {
    BinaryQuarticForm::new(c.map(rat))
}

#[test]
fn resolvent_examples() {
    let r = resolvent_jacobian(&common::base_quartic()).unwrap();
    // 72ace - 27ad^2 - 2c^3 at (3, -162, -351, -729), evaluated by hand
    assert_eq!(r.i, rat(0));
    assert_eq!(r.j, rat(25_509_168 - 9_979_281 + 8_503_056));
    assert!(r.curve.is_isomorphic_over_q(&ShortWeierstrassCurve::from_ints(0, -1221).unwrap()));

    let r = resolvent_jacobian(&QuarticCurveModel::from_ints(1, 0, 0, 1).unwrap()).unwrap();
    assert_eq!((r.i, r.j), (rat(12), rat(0)));
    assert_eq!(form([1, 0, 0, 0, 1]).invariants(), (rat(12), rat(0)));
    assert!(QuarticCurveModel::from_ints(1, -2, 0, 1).is_err());
}

#[test]
fn two_covering_pencil() {
    let q = two_covering_quadrics(&QuarticCurveModel::from_ints(1, 0, 0, 1).unwrap());
    // block determinant (m^2 - l^2/4)(-l)(-m)
    assert_eq!(q.pencil_determinant(), BinaryQuarticForm::new([rat(0), frac(-1, 4), rat(0), rat(1), rat(0)]));
    for (l, m) in [(1, 0), (0, 1), (2, 1), (-3, 5), (7, -2)] {
        let (l, m) = (rat(l), rat(m));
        assert_eq!(determinant(&combo(&q, &l, &m)), q.pencil_determinant().eval(&l, &m));
    }
    q.check_smooth().unwrap();
}

#[test]
fn scalar_pencil_is_singular() {
    let a = common::A;
    let tripled = a.map(|r| r.map(|x| 3 * x));
    let q = QuadricIntersectionModel::from_ints(a, tripled).unwrap();
    assert!(matches!(q.check_smooth(), Err(Error::Degenerate(_))));
    let mut asym = common::B;
    asym[0][1] += 1;
    assert!(QuadricIntersectionModel::from_ints(common::A, asym).is_err());
}

#[test]
fn four_covering_matches_reference() {
    let c = common::base_quartic();
    let q = build_four_covering(&c, &common::base_epsilon()).unwrap();
    assert_eq!(q, common::reference_pair());
    assert!(q.same_pencil(&common::reference_pair().swapped()));
    assert!(q.pencil_determinant().same_invariant_ratio(&c.binary_form()));

    let k = common::base_epsilon().algebra().clone();
    let err = build_four_covering(&c, &QuarticElement::one(&k)).unwrap_err();
    assert!(matches!(err, Error::Inadmissible(_)));
}

fn small() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| frac(n, d))
}

fn smooth_quartic() -> impl Strategy<Value = QuarticCurveModel> {
    (1i64..=5, -9i64..=9, -9i64..=9, -9i64..=9)
        .prop_filter_map("smooth", |(a, c, d, e)| QuarticCurveModel::from_ints(a, c, d, e).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn chart_identity(c in smooth_quartic(), x in small(), y in small()) {
        let q = two_covering_quadrics(&c);
        let pt = [&x * &x, Rational::one(), x.clone(), y.clone()];
        prop_assert!(quad(q.m1(), &pt).is_zero());
        prop_assert_eq!(quad(q.m2(), &pt), c.quartic().eval(&x) - &y * &y);
        prop_assert!(q.pencil_determinant().same_invariant_ratio(&c.binary_form()));
    }

    #[test]
    fn invariants_are_covariant(f in prop::array::uniform5(-6i64..=6), g in prop::array::uniform4(-3i64..=3)) {
        let f = form(f);
        let [al, be, ga, de] = g.map(rat);
        let det = &al * &de - &be * &ga;
        let (i, j) = f.invariants();
        let (i2, j2) = f.substitute(&al, &be, &ga, &de).invariants();
        let d2 = &det * &det;
        prop_assert_eq!(i2, &d2 * &d2 * i);
        prop_assert_eq!(j2, &d2 * &d2 * &d2 * j);
    }

    #[test]
    fn four_covering_forms_are_coordinates(x in prop::array::uniform4(-9i64..=9)) {
        let c = common::base_quartic();
        let eps = common::base_epsilon();
        let (t2, t3) = four_covering_forms(&c, &eps).unwrap();
        let k = eps.algebra().clone();
        let xs = x.map(rat);
        let s = QuarticElement::new(&k, xs.clone());
        let prod = eps.mul(&s.mul(&s).unwrap()).unwrap();
        prop_assert_eq!(quad(&t2, &xs), prod.coords()[2].clone());
        prop_assert_eq!(quad(&t3, &xs), prod.coords()[3].clone());
    }
}
