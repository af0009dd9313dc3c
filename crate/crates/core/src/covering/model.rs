use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::matrix::{poly_determinant, rank, Matrix};
use crate::arith::poly::{discriminant, Poly};
use crate::arith::rational::{gcd_of, lcm_of_denominators, rat, to_string, Rational};
use crate::error::{invalid, Error, Result};

/// The genus one curve `y^2 = a x^4 + c x^2 + d x + e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuarticCurveModel {
    pub a: Rational,
    pub c: Rational,
    pub d: Rational,
    pub e: Rational,
}

impl QuarticCurveModel {
    pub fn new(a: Rational, c: Rational, d: Rational, e: Rational) -> Result<Self> {
        let m = QuarticCurveModel { a, c, d, e };
        if m.a.is_zero() {
            return invalid("quartic model needs a != 0");
        }
        if discriminant(&m.quartic())?.is_zero() {
            return invalid(format!("quartic {} has a repeated root", m.quartic()));
        }
        Ok(m)
    }

    pub fn from_ints(a: i64, c: i64, d: i64, e: i64) -> Result<Self> {
        Self::new(rat(a), rat(c), rat(d), rat(e))
    }

    pub fn quartic(&self) -> Poly {
        Poly::new(vec![
            self.e.clone(),
            self.d.clone(),
            self.c.clone(),
            Rational::zero(),
            self.a.clone(),
        ])
    }

    /// `a X^4 + c X^2 Z^2 + d X Z^3 + e Z^4`
    pub fn binary_form(&self) -> BinaryQuarticForm {
        BinaryQuarticForm::new([
            self.a.clone(),
            Rational::zero(),
            self.c.clone(),
            self.d.clone(),
            self.e.clone(),
        ])
    }

    /// The model `y^2 = D^2 g(x)` with integral coefficients, for the least
    /// `D` clearing all denominators.
    pub fn integral(&self) -> Self {
        let l = lcm_of_denominators([&self.a, &self.c, &self.d, &self.e]);
        let s = Rational::from_integer(&l * &l);
        QuarticCurveModel {
            a: &self.a * &s,
            c: &self.c * &s,
            d: &self.d * &s,
            e: &self.e * &s,
        }
    }
}

impl fmt::Display for QuarticCurveModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = {}", self.quartic())
    }
}

/// Binary quartic `a l^4 + b l^3 m + c l^2 m^2 + d l m^3 + e m^4`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryQuarticForm {
    coeffs: [Rational; 5],
}

impl BinaryQuarticForm {
    pub fn new(coeffs: [Rational; 5]) -> Self {
        BinaryQuarticForm { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational; 5] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, l: &Rational, m: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            acc += c * num_traits::pow(l.clone(), 4 - i) * num_traits::pow(m.clone(), i);
        }
        acc
    }

    /// `F(t, 1)` as a polynomial in `t`.
    pub fn dehomogenize(&self) -> Poly {
        let mut c = self.coeffs.to_vec();
        c.reverse();
        Poly::new(c)
    }

    /// Inverse of [`dehomogenize`](Self::dehomogenize) for degree <= 4.
    pub fn from_dehomogenized(p: &Poly) -> Self {
        BinaryQuarticForm::new([p.coeff(4), p.coeff(3), p.coeff(2), p.coeff(1), p.coeff(0)])
    }

    /// `I = 12ae - 3bd + c^2`, `J = 72ace + 9bcd - 27ad^2 - 27eb^2 - 2c^3`.
    pub fn invariants(&self) -> (Rational, Rational) {
        let [a, b, c, d, e] = &self.coeffs;
        let i = rat(12) * a * e - rat(3) * b * d + c * c;
        let j = rat(72) * a * c * e + rat(9) * b * c * d
            - rat(27) * a * d * d
            - rat(27) * e * b * b
            - rat(2) * c * c * c;
        (i, j)
    }

    /// `(4 I^3 - J^2) / 27`, the discriminant of the form on `P^1`.
    pub fn discriminant(&self) -> Rational {
        let (i, j) = self.invariants();
        (rat(4) * &i * &i * &i - &j * &j) / rat(27)
    }

    /// `F(alpha l + beta m, gamma l + delta m)`.
    pub fn substitute(&self, alpha: &Rational, beta: &Rational, gamma: &Rational, delta: &Rational) -> Self {
        let first = Poly::new(vec![beta.clone(), alpha.clone()]);
        let second = Poly::new(vec![delta.clone(), gamma.clone()]);
        let mut total = Poly::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            let mut term = Poly::constant(c.clone());
            for _ in 0..4 - i {
                term = &term * &first;
            }
            for _ in 0..i {
                term = &term * &second;
            }
            total = &total + &term;
        }
        Self::from_dehomogenized(&total)
    }

    /// Whether `I_F^3 J_G^2 = I_G^3 J_F^2`, the invariant test for
    /// equivalence up to scaling and linear substitution.
    pub fn same_invariant_ratio(&self, other: &Self) -> bool {
        let (i1, j1) = self.invariants();
        let (i2, j2) = other.invariants();
        &i1 * &i1 * &i1 * &j2 * &j2 == &i2 * &i2 * &i2 * &j1 * &j1
    }
}

impl fmt::Display for BinaryQuarticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Two quadratic forms `x M1 x^t`, `x M2 x^t` on `P^3`, given by their
/// symmetric Gram matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadricIntersectionModel {
    m1: Matrix,
    m2: Matrix,
}

impl QuadricIntersectionModel {
    pub fn new(m1: Matrix, m2: Matrix) -> Result<Self> {
        for m in [&m1, &m2] {
            if m.len() != 4 || m.iter().any(|r| r.len() != 4) {
                return invalid("quadric matrices must be 4x4");
            }
            for i in 0..4 {
                for j in 0..i {
                    if m[i][j] != m[j][i] {
                        return invalid("quadric matrices must be symmetric");
                    }
                }
            }
        }
        Ok(QuadricIntersectionModel { m1, m2 })
    }

    pub fn from_ints(m1: [[i64; 4]; 4], m2: [[i64; 4]; 4]) -> Result<Self> {
        let conv = |m: [[i64; 4]; 4]| -> Matrix {
            m.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
        };
        Self::new(conv(m1), conv(m2))
    }

    pub fn m1(&self) -> &Matrix {
        &self.m1
    }

    pub fn m2(&self) -> &Matrix {
        &self.m2
    }

    pub fn forms(&self) -> [&Matrix; 2] {
        [&self.m1, &self.m2]
    }

    /// `det(l M1 + m M2)`.
    pub fn pencil_determinant(&self) -> BinaryQuarticForm {
        let entries: Vec<Vec<Poly>> = (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| Poly::new(vec![self.m2[i][j].clone(), self.m1[i][j].clone()]))
                    .collect()
            })
            .collect();
        let det = poly_determinant(&entries);
        BinaryQuarticForm::new([det.coeff(4), det.coeff(3), det.coeff(2), det.coeff(1), det.coeff(0)])
    }

    /// Smooth iff the pencil determinant is a nonzero form with distinct
    /// roots on `P^1`.
    pub fn check_smooth(&self) -> Result<()> {
        let f = self.pencil_determinant();
        if f.is_zero() || f.discriminant().is_zero() {
            return Err(Error::Degenerate(format!(
                "pencil determinant {f} has a repeated root"
            )));
        }
        Ok(())
    }

    pub fn is_integral(&self) -> bool {
        self.m1.iter().chain(self.m2.iter()).flatten().all(|x| x.is_integer())
    }

    /// Each matrix scaled to coprime integer entries.
    pub fn integral_forms(&self) -> [Vec<Vec<BigInt>>; 2] {
        [integral_entries(&self.m1), integral_entries(&self.m2)]
    }

    /// Whether the two models span the same pencil over Q.
    pub fn same_pencil(&self, other: &Self) -> bool {
        let flat = |m: &Matrix| -> Vec<Rational> { m.iter().flatten().cloned().collect() };
        let mine = vec![flat(&self.m1), flat(&self.m2)];
        let all = vec![flat(&self.m1), flat(&self.m2), flat(&other.m1), flat(&other.m2)];
        rank(&mine) == 2 && rank(&other_rows(other)) == 2 && rank(&all) == 2
    }

    /// Same model with the roles of `M1` and `M2` exchanged.
    pub fn swapped(&self) -> Self {
        QuadricIntersectionModel { m1: self.m2.clone(), m2: self.m1.clone() }
    }
}

fn other_rows(q: &QuadricIntersectionModel) -> Vec<Vec<Rational>> {
    q.forms().iter().map(|m| m.iter().flatten().cloned().collect()).collect()
}

fn integral_entries(m: &Matrix) -> Vec<Vec<BigInt>> {
    let n = normalize_integral(m);
    n.iter().map(|r| r.iter().map(|x| x.to_integer()).collect()).collect()
}

/// Clears denominators, divides by the content, and fixes the sign so that
/// the first nonzero diagonal entry (or failing that, the first nonzero
/// entry) is negative.
pub fn normalize_integral(m: &Matrix) -> Matrix {
    let l = Rational::from_integer(lcm_of_denominators(m.iter().flatten()));
    let ints: Vec<BigInt> = m.iter().flatten().map(|x| (x * &l).to_integer()).collect();
    let g = gcd_of(ints.iter());
    if g.is_zero() {
        return m.clone();
    }
    let n = m.len();
    let scaled: Matrix = (0..n)
        .map(|i| (0..n).map(|j| Rational::from_integer(&ints[i * n + j] / &g)).collect())
        .collect();
    let pivot = (0..n)
        .map(|i| scaled[i][i].clone())
        .find(|x| !x.is_zero())
        .or_else(|| scaled.iter().flatten().find(|x| !x.is_zero()).cloned())
        .unwrap_or_else(Rational::one);
    if pivot.is_positive() {
        scaled.iter().map(|r| r.iter().map(|x| -x).collect()).collect()
    } else {
        scaled
    }
}
