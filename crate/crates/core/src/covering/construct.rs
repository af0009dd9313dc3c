use num_traits::Zero;

use super::model::{normalize_integral, QuadricIntersectionModel, QuarticCurveModel};
use crate::arith::matrix::Matrix;
use crate::arith::rational::{frac, rat, square_class, Rational};
use crate::ecq::ShortWeierstrassCurve;
use crate::error::{invalid, Error, Result};
use crate::numfield::{epsilon_admissible, QuarticElement};

/// The Jacobian of a quartic model together with its invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolvent {
    pub i: Rational,
    pub j: Rational,
    /// `u^2 = v^3 - 27 I v - 27 J`
    pub curve: ShortWeierstrassCurve,
}

/// `I = 12ae + c^2`, `J = 72ace - 27ad^2 - 2c^3`, and the curve
/// `u^2 = v^3 - 27 I v - 27 J`.
pub fn resolvent_jacobian(c: &QuarticCurveModel) -> Result<Resolvent> {
    let (a, cc, d, e) = (&c.a, &c.c, &c.d, &c.e);
    let i = rat(12) * a * e + cc * cc;
    let j = rat(72) * a * cc * e - rat(27) * a * d * d - rat(2) * cc * cc * cc;
    let curve = ShortWeierstrassCurve::new(rat(-27) * &i, rat(-27) * &j)
        .map_err(|_| Error::Degenerate(format!("resolvent of {c} is singular")))?;
    Ok(Resolvent { i, j, curve })
}

/// Coordinates `(u, t, x, y)`: `Q = u t - x^2` and
/// `Q' = -y^2 + a u^2 + c u t + d x t + e t^2`. On the chart
/// `(u, t) = (x^2, 1)` these are `0` and `g(x) - y^2`.
pub fn two_covering_quadrics(c: &QuarticCurveModel) -> QuadricIntersectionModel {
    let z = Rational::zero;
    let half = frac(1, 2);
    let q = vec![
        vec![z(), half.clone(), z(), z()],
        vec![half.clone(), z(), z(), z()],
        vec![z(), z(), rat(-1), z()],
        vec![z(), z(), z(), z()],
    ];
    let qp = vec![
        vec![c.a.clone(), &c.c * &half, z(), z()],
        vec![&c.c * &half, c.e.clone(), &c.d * &half, z()],
        vec![z(), &c.d * &half, z(), z()],
        vec![z(), z(), z(), rat(-1)],
    ];
    QuadricIntersectionModel::new(q, qp).expect("symmetric 4x4")
}

/// Raw Gram matrices of the `theta^2` and `theta^3` coefficients of
/// `eps (x1 + x2 theta + x3 theta^2 + x4 theta^3)^2`.
///
/// Entry `(i, j)` of the `theta^m` matrix is the `theta^m` coordinate of
/// `eps theta^(i + j)`.
pub fn four_covering_forms(c: &QuarticCurveModel, eps: &QuarticElement) -> Result<(Matrix, Matrix)> {
    if eps.algebra().modulus() != &c.quartic().monic() {
        return invalid(format!("epsilon lives in Q[x]/({}), not the algebra of {c}", eps.algebra().modulus()));
    }
    let theta = QuarticElement::theta(eps.algebra());
    let mut powers = Vec::with_capacity(7);
    let mut cur = eps.clone();
    for _ in 0..7 {
        powers.push(cur.clone());
        cur = cur.mul(&theta)?;
    }
    let gram = |m: usize| -> Matrix {
        (0..4)
            .map(|i| (0..4).map(|j| powers[i + j].coords()[m].clone()).collect())
            .collect()
    };
    Ok((gram(2), gram(3)))
}

/// The 4-covering `C'` attached to an admissible `eps`, with each quadric
/// normalized by [`normalize_integral`].
pub fn build_four_covering(c: &QuarticCurveModel, eps: &QuarticElement) -> Result<QuadricIntersectionModel> {
    if !epsilon_admissible(eps, &c.a)? {
        let ratio = eps.norm() / &c.a;
        return Err(Error::Inadmissible(format!(
            "{} (square class {})",
            crate::arith::rational::to_string(&ratio),
            square_class(&ratio)?
        )));
    }
    let (t2, t3) = four_covering_forms(c, eps)?;
    let model = QuadricIntersectionModel::new(normalize_integral(&t2), normalize_integral(&t3))?;
    model
        .check_smooth()
        .map_err(|e| Error::Degenerate(format!("four-covering is singular: {e}")))?;
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::poly::Poly;
    use crate::numfield::QuarticAlgebra;

    #[test]
    fn base_resolvent() {
        let c = QuarticCurveModel::from_ints(3, -162, -351, -729).unwrap();
        let r = resolvent_jacobian(&c).unwrap();
        assert_eq!(r.i, rat(0));
        assert_eq!(r.j, rat(24_032_943));
        assert_eq!(r.curve, ShortWeierstrassCurve::from_ints(0, -648_889_461).unwrap());
        let j = ShortWeierstrassCurve::from_ints(0, -1221).unwrap();
        assert!(r.curve.is_isomorphic_over_q(&j));
    }

    #[test]
    fn resolvent_of_x4_plus_1() {
        let c = QuarticCurveModel::from_ints(1, 0, 0, 1).unwrap();
        let r = resolvent_jacobian(&c).unwrap();
        assert_eq!((r.i, r.j), (rat(12), rat(0)));
        assert_eq!(r.curve, ShortWeierstrassCurve::from_ints(-324, 0).unwrap());
    }

    #[test]
    fn two_covering_pencil_closed_form() {
        let c = QuarticCurveModel::from_ints(1, 0, 0, 1).unwrap();
        let q = two_covering_quadrics(&c);
        assert_eq!(crate::arith::matrix::rank(q.m1()), 3);
        // det(l Q - Q') = F(l, -1) = (1/4)(l^3 - 4 l)
        let f = q.pencil_determinant();
        let expected = Poly::new(vec![rat(0), rat(-1), rat(0), frac(1, 4)]);
        let dehom = Poly::new((0..=4).map(|k| f.coeffs()[4 - k].clone() * rat(if k % 2 == 0 { 1 } else { -1 })).collect());
        assert_eq!(dehom, expected);
    }

    #[test]
    fn four_covering_over_x4_minus_1() {
        let c = QuarticCurveModel::from_ints(1, 0, 0, -1).unwrap();
        let k = QuarticAlgebra::new(&c.quartic()).unwrap();
        let (t2, t3) = four_covering_forms(&c, &QuarticElement::one(&k)).unwrap();
        // theta^2: x2^2 + 2 x1 x3 + x4^2 ; theta^3: 2 x1 x4 + 2 x2 x3
        let h = |m: [[i64; 4]; 4]| -> Matrix { m.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect() };
        assert_eq!(t2, h([[0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1]]));
        assert_eq!(t3, h([[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]));
    }

    #[test]
    fn inadmissible_epsilon() {
        let c = QuarticCurveModel::from_ints(3, -162, -351, -729).unwrap();
        let k = QuarticAlgebra::new(&c.quartic()).unwrap();
        let err = build_four_covering(&c, &QuarticElement::one(&k)).unwrap_err();
        assert!(matches!(err, Error::Inadmissible(_)));
        let other = QuarticAlgebra::new(&Poly::from_ints(&[1, 0, 0, 0, 1])).unwrap();
        assert!(four_covering_forms(&c, &QuarticElement::one(&other)).is_err());
    }
}
