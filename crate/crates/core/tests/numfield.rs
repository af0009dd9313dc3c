mod common;

use std::sync::Arc;

use bielliptic::arith::matrix::determinant;
use bielliptic::arith::poly::Poly;
use bielliptic::arith::rational::{frac, rat, Rational};
use bielliptic::numfield::{epsilon_admissible, QuarticAlgebra, QuarticElement};
use proptest::prelude::*;

fn base_algebra() -> Arc<QuarticAlgebra> {
    QuarticAlgebra::new(&common::base_quartic().quartic()).unwrap()
}

fn elt(k: &Arc<QuarticAlgebra>, c: [i64; 4]) -> QuarticElement {
    QuarticElement::new(k, c.map(rat))
}

/// Schoolbook product followed by long division by the monic modulus.
fn mul_oracle(k: &Arc<QuarticAlgebra>, x: &QuarticElement, y: &QuarticElement) -> [Rational; 4] {
    let px = Poly::new(x.coords().to_vec());
    let py = Poly::new(y.coords().to_vec());
    let (_, r) = (&px * &py).div_rem(k.modulus()).unwrap();
    std::array::from_fn(|i| r.coeff(i))
}

#[test]
fn multiplication_examples() {
    let k = base_algebra();
    assert_eq!(k.modulus(), &Poly::from_ints(&[-243, -117, -54, 0, 1]));
    let theta = QuarticElement::theta(&k);
    let t4 = theta.mul(&theta.pow(3)).unwrap();
    assert_eq!(t4, elt(&k, [243, 117, 54, 0]));
    let u = elt(&k, [3, -1, 4, 1]);
    assert_eq!(u.mul(&QuarticElement::one(&k)).unwrap(), u);

    let split = QuarticAlgebra::new(&Poly::from_ints(&[-1, 0, 0, 0, 1])).unwrap();
    assert!(!split.is_field());
    assert!(k.is_field());
    let t = QuarticElement::theta(&split);
    assert_eq!(t.mul(&t).unwrap(), elt(&split, [0, 0, 1, 0]));
    assert!(t.mul(&theta).is_err());
}

#[test]
fn norm_examples() {
    let k = base_algebra();
    assert_eq!(common::base_epsilon().norm(), rat(243));
    assert_eq!(QuarticElement::one(&k).norm(), rat(1));
    let theta = QuarticElement::theta(&k);
    assert_eq!(theta.norm(), rat(-243));
    assert_eq!(determinant(&theta.multiplication_matrix()), rat(-243));
}

#[test]
fn admissibility_examples() {
    let k = base_algebra();
    assert!(epsilon_admissible(&common::base_epsilon(), &rat(3)).unwrap());
    let unit = QuarticAlgebra::new(&Poly::from_ints(&[1, 0, 0, 0, 1])).unwrap();
    assert!(epsilon_admissible(&QuarticElement::one(&unit), &rat(1)).unwrap());
    assert!(!epsilon_admissible(&QuarticElement::theta(&k), &rat(3)).unwrap());
    assert!(!epsilon_admissible(&QuarticElement::one(&k), &rat(3)).unwrap());
    assert!(epsilon_admissible(&QuarticElement::scalar(&k, rat(0)), &rat(3)).is_err());
}

fn coords() -> impl Strategy<Value = [i64; 4]> {
    prop::array::uniform4(-30i64..=30)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn norm_is_multiplicative(x in coords(), y in coords()) {
        let k = base_algebra();
        let (x, y) = (elt(&k, x), elt(&k, y));
        prop_assert_eq!(x.mul(&y).unwrap().norm(), x.norm() * y.norm());
    }

    #[test]
    fn scalar_norm_is_fourth_power(n in -50i64..=50, d in 1i64..=50) {
        let k = base_algebra();
        let c = frac(n, d);
        prop_assert_eq!(QuarticElement::scalar(&k, c.clone()).norm(), &c * &c * &c * &c);
    }

    #[test]
    fn multiplication_matches_long_division(x in coords(), y in coords(), g in prop::array::uniform4(-9i64..=9)) {
        let Ok(k) = QuarticAlgebra::new(&Poly::from_ints(&[g[0], g[1], g[2], g[3], 1])) else {
            // repeated roots are rejected
            return Ok(());
        };
        let (x, y) = (elt(&k, x), elt(&k, y));
        let product = x.mul(&y).unwrap();
        prop_assert_eq!(product.coords(), &mul_oracle(&k, &x, &y));
        prop_assert_eq!(determinant(&x.multiplication_matrix()), x.norm());
    }
}
