//! Arithmetic in the quartic algebra `K = Q[x] / (g)`.
//!
//! The algebra is represented by the monic part of `g`; the quotient ring
//! and all norms are the same as for `g` itself.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::arith::matrix::determinant;
use crate::arith::poly::{discriminant, is_irreducible_deg_le_4, Poly};
use crate::arith::rational::{square_class, Rational};
use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuarticAlgebra {
    modulus: Poly,
    original_leading: Rational,
    is_field: bool,
}

impl QuarticAlgebra {
    /// `K = Q[x] / (g)` for a quartic `g` with distinct roots. Reducible `g`
    /// is accepted; `is_field` records the distinction.
    pub fn new(g: &Poly) -> Result<Arc<Self>> {
        if g.degree() != Some(4) {
            return invalid(format!("quartic algebra needs a degree 4 modulus, got {g}"));
        }
        if discriminant(g)?.is_zero() {
            return invalid(format!("modulus {g} has a repeated root"));
        }
        Ok(Arc::new(QuarticAlgebra {
            modulus: g.monic(),
            original_leading: g.leading(),
            is_field: is_irreducible_deg_le_4(g)?,
        }))
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn original_leading(&self) -> &Rational {
        &self.original_leading
    }

    pub fn is_field(&self) -> bool {
        self.is_field
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct QuarticElement {
    coords: [Rational; 4],
    algebra: Arc<QuarticAlgebra>,
}

impl QuarticElement {
    pub fn new(algebra: &Arc<QuarticAlgebra>, coords: [Rational; 4]) -> Self {
        QuarticElement { coords, algebra: Arc::clone(algebra) }
    }

    pub fn scalar(algebra: &Arc<QuarticAlgebra>, c: Rational) -> Self {
        Self::new(algebra, [c, Rational::zero(), Rational::zero(), Rational::zero()])
    }

    pub fn one(algebra: &Arc<QuarticAlgebra>) -> Self {
        Self::scalar(algebra, Rational::one())
    }

    pub fn theta(algebra: &Arc<QuarticAlgebra>) -> Self {
        Self::new(algebra, [Rational::zero(), Rational::one(), Rational::zero(), Rational::zero()])
    }

    pub fn coords(&self) -> &[Rational; 4] {
        &self.coords
    }

    pub fn algebra(&self) -> &Arc<QuarticAlgebra> {
        &self.algebra
    }

    fn as_poly(&self) -> Poly {
        Poly::new(self.coords.to_vec())
    }

    fn reduce(&self, p: &Poly) -> Self {
        let m = self.algebra.modulus.coeffs();
        let mut c: Vec<Rational> = p.coeffs().to_vec();
        for i in (4..c.len()).rev() {
            let top = std::mem::take(&mut c[i]);
            if top.is_zero() {
                continue;
            }
            // x^i = -x^(i-4) (m0 + m1 x + m2 x^2 + m3 x^3)
            for (j, mj) in m.iter().take(4).enumerate() {
                c[i - 4 + j] -= &top * mj;
            }
        }
        c.resize(4, Rational::zero());
        let coords = [c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()];
        Self::new(&self.algebra, coords)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.algebra != other.algebra {
            return invalid("elements of different quartic algebras");
        }
        Ok(self.reduce(&(&self.as_poly() * &other.as_poly())))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(&self.algebra);
        for _ in 0..k {
            out = out.mul(self).expect("same algebra");
        }
        out
    }

    /// Matrix of multiplication by `self` in the basis `1, theta, theta^2,
    /// theta^3`; column `j` holds `self * theta^j`.
    pub fn multiplication_matrix(&self) -> Vec<Vec<Rational>> {
        let theta = Self::theta(&self.algebra);
        let mut cols = Vec::with_capacity(4);
        let mut cur = self.clone();
        for _ in 0..4 {
            cols.push(cur.coords.clone());
            cur = cur.mul(&theta).expect("same algebra");
        }
        (0..4).map(|i| (0..4).map(|j| cols[j][i].clone()).collect()).collect()
    }

    pub fn norm(&self) -> Rational {
        determinant(&self.multiplication_matrix())
    }
}

impl fmt::Debug for QuarticElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for QuarticElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = Poly::new(self.coords.to_vec());
        write!(f, "{}", p.to_string().replace('x', "theta"))
    }
}

/// Whether `a^-1 N(eps)` is a nonzero rational square.
pub fn epsilon_admissible(eps: &QuarticElement, a: &Rational) -> Result<bool> {
    if a.is_zero() {
        return invalid("leading coefficient a = 0");
    }
    let n = eps.norm();
    if n.is_zero() {
        return Err(Error::NonInvertible(format!("N({eps}) = 0")));
    }
    Ok(square_class(&(n / a))?.is_trivial())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{frac, rat};

    fn base_algebra() -> Arc<QuarticAlgebra> {
        QuarticAlgebra::new(&Poly::from_ints(&[-729, -351, -162, 0, 3])).unwrap()
    }

    fn base_eps(k: &Arc<QuarticAlgebra>) -> QuarticElement {
        QuarticElement::new(k, [rat(27), rat(29), rat(-1), frac(-1, 3)])
    }

    #[test]
    fn multiplication() {
        let k = base_algebra();
        let t = QuarticElement::theta(&k);
        let t3 = t.pow(3);
        let expected = QuarticElement::new(&k, [rat(243), rat(117), rat(54), rat(0)]);
        assert_eq!(t.mul(&t3).unwrap(), expected);
        let u = base_eps(&k);
        assert_eq!(u.mul(&QuarticElement::one(&k)).unwrap(), u);

        let k1 = QuarticAlgebra::new(&Poly::from_ints(&[-1, 0, 0, 0, 1])).unwrap();
        assert!(!k1.is_field());
        let t1 = QuarticElement::theta(&k1);
        let sq = QuarticElement::new(&k1, [rat(0), rat(0), rat(1), rat(0)]);
        assert_eq!(t1.mul(&t1).unwrap(), sq);
        assert!(t1.mul(&t).is_err());
    }

    #[test]
    fn norms() {
        let k = base_algebra();
        assert!(k.is_field());
        assert_eq!(base_eps(&k).norm(), rat(243));
        assert_eq!(QuarticElement::one(&k).norm(), rat(1));
        assert_eq!(QuarticElement::theta(&k).norm(), rat(-243));
    }

    #[test]
    fn admissibility() {
        let k = base_algebra();
        assert!(epsilon_admissible(&base_eps(&k), &rat(3)).unwrap());
        assert!(!epsilon_admissible(&QuarticElement::theta(&k), &rat(3)).unwrap());
        assert!(!epsilon_admissible(&QuarticElement::one(&k), &rat(3)).unwrap());
        let k1 = QuarticAlgebra::new(&Poly::from_ints(&[-1, 0, 0, 0, 1])).unwrap();
        assert!(epsilon_admissible(&QuarticElement::one(&k1), &rat(1)).unwrap());
        // 1 - theta is a zero divisor when g(1) = 0
        let zd = QuarticElement::new(&k1, [rat(1), rat(-1), rat(0), rat(0)]);
        assert!(matches!(epsilon_admissible(&zd, &rat(1)), Err(Error::NonInvertible(_))));
    }

    #[test]
    fn rejects_singular_modulus() {
        assert!(QuarticAlgebra::new(&Poly::from_ints(&[1, 0, 2, 0, 1])).is_err());
        assert!(QuarticAlgebra::new(&Poly::from_ints(&[1, 0, 1])).is_err());
    }
}
