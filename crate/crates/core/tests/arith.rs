use bielliptic::arith::integer::{factorize, is_prime_u, prime_divisors};
use bielliptic::arith::matrix::determinant;
use bielliptic::arith::poly::{discriminant, is_irreducible_deg_le_4, rational_roots, resultant, Poly, SturmSequence};
use bielliptic::arith::rational::{frac, parse, rat, square_class, valuation, Rational, Valuation};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// Sylvester matrix determinant, written out independently of the library.
fn sylvester_oracle(f: &[i64], g: &[i64]) -> Rational {
    // coefficients from the leading term down
    let (m, n) = (f.len() - 1, g.len() - 1);
    let size = m + n;
    let mut rows = vec![vec![Rational::zero(); size]; size];
    for i in 0..n {
        for (j, c) in f.iter().enumerate() {
            rows[i][i + j] = rat(*c);
        }
    }
    for i in 0..m {
        for (j, c) in g.iter().enumerate() {
            rows[n + i][i + j] = rat(*c);
        }
    }
    determinant(&rows)
}

#[test]
fn resultant_examples() {
    let p = Poly::from_ints(&[1, 0, 1]);
    let q = Poly::from_ints(&[2, 0, 1]);
    assert_eq!(resultant(&p, &q).unwrap(), rat(1));
    assert_eq!(sylvester_oracle(&[1, 0, 1], &[1, 0, 2]), rat(1));
    assert_eq!(resultant(&p, &p).unwrap(), rat(0));
    assert_eq!(resultant(&Poly::from_ints(&[-2, 1]), &Poly::from_ints(&[-5, 1])).unwrap(), rat(-3));
}

#[test]
fn discriminant_examples() {
    assert_eq!(discriminant(&Poly::from_ints(&[1, 0, 1])).unwrap(), rat(-4));
    // -4p^3 - 27q^2 with p = 0, q = -1221
    assert_eq!(discriminant(&Poly::from_ints(&[-1221, 0, 0, 1])).unwrap(), rat(-27 * 1221 * 1221));
    assert_eq!(rat(-27 * 1221 * 1221), rat(-40_252_707));
    // closed-form quartic discriminant evaluated separately
    let monic = Poly::from_ints(&[-243, -117, -54, 0, 1]);
    assert_eq!(discriminant(&monic).unwrap(), rat(-29_344_223_403));
}

#[test]
fn valuation_examples() {
    assert_eq!(valuation(&rat(243), &big(3)).unwrap(), Valuation::Finite(5));
    assert_eq!(valuation(&rat(0), &big(7)).unwrap(), Valuation::Infinite);
    assert_eq!(valuation(&frac(9, 4), &big(2)).unwrap(), Valuation::Finite(-2));
    assert!(valuation(&rat(5), &big(6)).is_err());
}

#[test]
fn square_class_examples() {
    let rep = |n: i64| square_class(&rat(n)).unwrap().representative().clone();
    assert_eq!(rep(81), big(1));
    assert_eq!(rep(243), big(3));
    assert_eq!(rep(-12), big(-3));
    assert!(square_class(&rat(0)).is_err());
}

#[test]
fn rational_root_examples() {
    assert!(rational_roots(&Poly::from_ints(&[-1221, 0, 0, 1])).unwrap().is_empty());
    let mut r = rational_roots(&Poly::from_ints(&[-1, 0, 1])).unwrap();
    r.sort();
    assert_eq!(r, vec![rat(-1), rat(1)]);
    assert!(rational_roots(&Poly::from_ints(&[-729, -351, -162, 0, 3])).unwrap().is_empty());
}

#[test]
fn irreducibility_examples() {
    assert!(is_irreducible_deg_le_4(&Poly::from_ints(&[-729, -351, -162, 0, 3])).unwrap());
    assert!(!is_irreducible_deg_le_4(&Poly::from_ints(&[-1, 0, 0, 0, 1])).unwrap());
    assert!(is_irreducible_deg_le_4(&Poly::from_ints(&[-1221, 0, 0, 1])).unwrap());
    // product of two irreducible quadratics
    let f = &Poly::from_ints(&[1, 0, 1]) * &Poly::from_ints(&[2, 0, 1]);
    assert!(!is_irreducible_deg_le_4(&f).unwrap());
    assert!(is_irreducible_deg_le_4(&Poly::from_ints(&[2, 0, 0, 0, 1])).unwrap());
    // x^4 + 4 = (x^2 + 2x + 2)(x^2 - 2x + 2)
    assert!(!is_irreducible_deg_le_4(&Poly::from_ints(&[4, 0, 0, 0, 1])).unwrap());
}

#[test]
fn prime_divisor_examples() {
    assert_eq!(prime_divisors(&big(1221)).unwrap(), vec![big(3), big(11), big(37)]);
    assert!(prime_divisors(&big(1)).unwrap().is_empty());
    assert_eq!(prime_divisors(&big(64)).unwrap(), vec![big(2)]);
    let n: BigInt = "1000000000000000000000007".parse::<BigInt>().unwrap() * big(1_000_003);
    let f = factorize(&n).unwrap();
    assert_eq!(f.iter().map(|(p, e)| p.pow(*e)).product::<BigInt>(), n);
}

#[test]
fn parse_rationals() {
    assert_eq!(parse("-1/3").unwrap(), frac(-1, 3));
    assert_eq!(parse(" 27 ").unwrap(), rat(27));
    assert!(parse("1/0").is_err());
    assert!(parse("0.5").is_err());
}

#[test]
fn sturm_counts() {
    let s = SturmSequence::new(&Poly::from_ints(&[-2, 0, 1]));
    assert_eq!(s.count_real(), 2);
    assert_eq!(s.count_in(&rat(0), &rat(2)), 1);
    assert_eq!(SturmSequence::new(&Poly::from_ints(&[1, 0, 0, 0, 1])).count_real(), 0);
}

fn poly_strategy(max_deg: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-9i64..=9, 2..=max_deg + 1).prop_filter("nonzero leading", |c| *c.last().unwrap() != 0)
}

fn nonzero() -> impl Strategy<Value = Rational> {
    (-300i64..=300, 1i64..=300).prop_filter("nonzero", |(n, _)| *n != 0).prop_map(|(n, d)| frac(n, d))
}

fn rat_pow(r: &Rational, k: usize) -> Rational {
    (0..k).fold(Rational::one(), |acc, _| acc * r)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn resultant_symmetry(f in poly_strategy(4), g in poly_strategy(4)) {
        let (pf, pg) = (Poly::from_ints(&f), Poly::from_ints(&g));
        let sign = if (f.len() - 1) * (g.len() - 1) % 2 == 1 { rat(-1) } else { rat(1) };
        let r = resultant(&pf, &pg).unwrap();
        prop_assert_eq!(&r, &(sign * resultant(&pg, &pf).unwrap()));
        let rev = |c: &[i64]| c.iter().rev().cloned().collect::<Vec<_>>();
        prop_assert_eq!(r, sylvester_oracle(&rev(&f), &rev(&g)));
    }

    #[test]
    fn discriminant_scaling(f in poly_strategy(4).prop_filter("degree >= 2", |f| f.len() >= 3), c in nonzero()) {
        let p = Poly::from_ints(&f);
        let n = f.len() - 1;
        prop_assert_eq!(discriminant(&p.scale(&c)).unwrap(), rat_pow(&c, 2 * n - 2) * discriminant(&p).unwrap());
    }

    #[test]
    fn square_class_is_well_defined(r in nonzero(), s in nonzero()) {
        prop_assert_eq!(square_class(&(&r * &s * &s)).unwrap(), square_class(&r).unwrap());
    }

    #[test]
    fn valuation_laws(a in nonzero(), b in nonzero(), p in prop::sample::select(vec![2i64, 3, 5, 7])) {
        let p = big(p);
        let v = |x: &Rational| valuation(x, &p).unwrap().finite().unwrap();
        prop_assert_eq!(v(&(&a * &b)), v(&a) + v(&b));
        let sum = &a + &b;
        if v(&a) != v(&b) {
            prop_assert_eq!(v(&sum), v(&a).min(v(&b)));
        } else if !sum.is_zero() {
            prop_assert!(v(&sum) >= v(&a));
        }
    }

    #[test]
    fn rational_roots_of_products(roots in prop::collection::vec((-6i64..=6, 1i64..=4), 1..=4), lead in 1i64..=3) {
        let mut f = Poly::constant(rat(lead));
        let mut expected: Vec<Rational> = Vec::new();
        for (n, d) in &roots {
            let r = frac(*n, *d);
            f = &f * &Poly::linear_root(&r);
            expected.push(r);
        }
        expected.sort();
        let mut got = rational_roots(&f).unwrap();
        got.sort();
        for r in &got {
            prop_assert!(f.eval(r).is_zero());
        }
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn primality_matches_trial_division(n in 0u64..20_000) {
        let naive = n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0);
        prop_assert_eq!(is_prime_u(n), naive);
    }
}
