//! Dense univariate polynomials with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::integer::{divisors, exact_root};
use super::matrix::determinant;
use super::rational::{gcd_of, lcm_of_denominators, rat, Rational};
use crate::error::{invalid, Result};

/// Coefficients are stored constant term first; the representation is
/// always trimmed so the last stored coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Poly::new(coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// `x - r`
    pub fn linear_root(r: &Rational) -> Self {
        Poly::new(vec![-r.clone(), Rational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    /// `x^n f(1/x)`
    pub fn reversed(&self, n: usize) -> Self {
        let mut c: Vec<Rational> = (0..=n).map(|i| self.coeff(i)).collect();
        c.reverse();
        Poly::new(c)
    }

    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let Some(dd) = d.degree() else {
            return invalid("polynomial division by zero");
        };
        let lc_inv = d.leading().recip();
        let mut rem = self.coeffs.clone();
        let n = rem.len();
        if n <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); n - dd];
        for i in (dd..n).rev() {
            let c = &rem[i] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                rem[i - dd + j] -= &c * dj;
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Scalar multiple with coprime integer coefficients and positive
    /// leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return vec![];
        }
        let l = lcm_of_denominators(self.coeffs.iter());
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
            .collect();
        let mut g = gcd_of(ints.iter());
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        ints.into_iter().map(|c| c / &g).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    fn sign_at(&self, x: &Rational) -> i8 {
        let v = self.eval(x);
        if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        }
    }

    fn sign_at_infinity(&self, positive: bool) -> i8 {
        match self.degree() {
            None => 0,
            Some(d) => {
                let s = if self.leading().is_positive() { 1 } else { -1 };
                if positive || d % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
        }
    }

    /// Cauchy bound: every complex root has absolute value below it.
    pub fn root_bound(&self) -> Rational {
        let lc = self.leading().abs();
        let m = self
            .coeffs
            .iter()
            .take(self.coeffs.len().saturating_sub(1))
            .map(|c| c.abs() / &lc)
            .max()
            .unwrap_or_else(Rational::zero);
        m + Rational::one()
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let coef = super::rational::to_string(&a);
            match (i, a.is_one()) {
                (0, _) => write!(f, "{coef}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{coef}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{coef}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Sylvester-determinant resultant, `lc(f)^deg(g) * prod g(alpha)` over the
/// roots of `f`. A zero argument gives 0 unless both are zero.
pub fn resultant(f: &Poly, g: &Poly) -> Result<Rational> {
    let (Some(m), Some(n)) = (f.degree(), g.degree()) else {
        if f.is_zero() && g.is_zero() {
            return invalid("resultant of two zero polynomials");
        }
        return Ok(Rational::zero());
    };
    let size = m + n;
    if size == 0 {
        return Ok(Rational::one());
    }
    let mut rows = vec![vec![Rational::zero(); size]; size];
    for i in 0..n {
        for k in 0..=m {
            rows[i][i + k] = f.coeff(m - k);
        }
    }
    for i in 0..m {
        for k in 0..=n {
            rows[n + i][i + k] = g.coeff(n - k);
        }
    }
    Ok(determinant(&rows))
}

/// `(-1)^(n(n-1)/2) Res(f, f') / lc(f)`.
pub fn discriminant(f: &Poly) -> Result<Rational> {
    let n = match f.degree() {
        Some(n) if n >= 2 => n,
        _ => return invalid(format!("discriminant needs degree >= 2, got {f}")),
    };
    let r = resultant(f, &f.derivative())? / f.leading();
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -r } else { r })
}

/// Rational roots with multiplicity, ordered by absolute value with the
/// positive root of a `+-r` pair first.
pub fn rational_roots(f: &Poly) -> Result<Vec<Rational>> {
    if f.is_zero() {
        return invalid("rational roots of the zero polynomial");
    }
    let mut work = f.clone();
    let mut roots = Vec::new();
    while work.degree().unwrap_or(0) > 0 && work.coeff(0).is_zero() {
        roots.push(Rational::zero());
        work = Poly::new(work.coeffs[1..].to_vec());
    }
    if work.degree().unwrap_or(0) == 0 {
        return Ok(roots);
    }
    let ints = work.primitive_integer();
    let nums = divisors(&ints[0])?;
    let dens = divisors(ints.last().unwrap())?;
    let mut candidates: Vec<Rational> = Vec::new();
    for u in &nums {
        for v in &dens {
            let r = Rational::new(u.clone(), v.clone());
            candidates.push(r.clone());
            candidates.push(-r);
        }
    }
    candidates.sort_by(|a, b| {
        a.abs()
            .cmp(&b.abs())
            .then_with(|| a.is_negative().cmp(&b.is_negative()))
    });
    candidates.dedup();
    for r in candidates {
        while work.degree().unwrap_or(0) > 0 && work.eval(&r).is_zero() {
            roots.push(r.clone());
            work = work.div_rem(&Poly::linear_root(&r))?.0;
        }
    }
    Ok(roots)
}

/// Irreducibility over Q for degrees 1 to 4.
///
/// Degrees 2 and 3 reduce to the rational root test. For degree 4 the
/// polynomial is made monic integral, `G(y) = c4^3 F(y / c4)`, and every
/// factorization into integral quadratics `(y^2 + p y + q)(y^2 + r y + s)`
/// is enumerated through the divisor pairs `q s = G(0)`.
pub fn is_irreducible_deg_le_4(f: &Poly) -> Result<bool> {
    let d = match f.degree() {
        Some(d) if (1..=4).contains(&d) => d,
        _ => return invalid(format!("irreducibility test needs 1 <= deg <= 4, got {f}")),
    };
    if d == 1 {
        return Ok(true);
    }
    if !rational_roots(f)?.is_empty() {
        return Ok(false);
    }
    if d < 4 {
        return Ok(true);
    }
    let c = f.primitive_integer();
    let c4 = &c[4];
    let a3 = c[3].clone();
    let a2 = &c[2] * c4;
    let a1 = &c[1] * c4 * c4;
    let a0 = &c[0] * c4 * c4 * c4;
    let four = BigInt::from(4);
    for q in divisors(&a0)? {
        for q in [q.clone(), -q] {
            let s = &a0 / &q;
            let disc = &a3 * &a3 - &four * (&a2 - &q - &s);
            let Some(root) = exact_root(&disc, 2) else {
                continue;
            };
            if ((&a3 + &root) % 2u32) != BigInt::zero() {
                continue;
            }
            let p = (&a3 + &root) / 2;
            let r = &a3 - &p;
            if &p * &s + &q * &r == a1 || &r * &s + &q * &p == a1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn sturm_chain(f: &Poly) -> Vec<Poly> {
    let mut chain = vec![f.clone(), f.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]).expect("nonzero divisor");
        if r.is_zero() {
            break;
        }
        chain.push(-&r);
    }
    chain
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Sturm-sequence root counting for a nonzero polynomial.
pub struct SturmSequence {
    chain: Vec<Poly>,
}

impl SturmSequence {
    pub fn new(f: &Poly) -> Self {
        SturmSequence { chain: sturm_chain(f) }
    }

    fn var_at(&self, x: &Rational) -> usize {
        variations(self.chain.iter().map(|p| p.sign_at(x)))
    }

    /// Number of distinct real roots.
    pub fn count_real(&self) -> usize {
        let lo = variations(self.chain.iter().map(|p| p.sign_at_infinity(false)));
        let hi = variations(self.chain.iter().map(|p| p.sign_at_infinity(true)));
        lo - hi
    }

    /// Distinct real roots in the half-open interval `(a, b]`.
    pub fn count_in(&self, a: &Rational, b: &Rational) -> usize {
        self.var_at(a).saturating_sub(self.var_at(b))
    }

    /// Disjoint half-open intervals `(lo, hi]`, increasing, each holding
    /// exactly one real root.
    pub fn isolate(&self) -> Vec<(Rational, Rational)> {
        let f = &self.chain[0];
        let b = f.root_bound();
        let mut out = Vec::new();
        let mut stack = vec![(-b.clone(), b)];
        while let Some((lo, hi)) = stack.pop() {
            match self.count_in(&lo, &hi) {
                0 => {}
                1 => out.push((lo, hi)),
                _ => {
                    let mid = (&lo + &hi) / rat(2);
                    stack.push((lo, mid.clone()));
                    stack.push((mid, hi));
                }
            }
        }
        out.sort();
        out
    }

    /// A point of `(x, y)` that is not a root and has no root in `(x, point]`.
    pub fn point_after(&self, x: &Rational, y: &Rational) -> Rational {
        let f = &self.chain[0];
        let mut hi = y.clone();
        loop {
            let mid = (x + &hi) / rat(2);
            if self.count_in(x, &mid) == 0 && !f.eval(&mid).is_zero() {
                return mid;
            }
            hi = mid;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::frac;

    #[test]
    fn resultant_examples() {
        let f = Poly::from_ints(&[1, 0, 1]);
        let g = Poly::from_ints(&[2, 0, 1]);
        assert_eq!(resultant(&f, &g).unwrap(), rat(1));
        assert_eq!(resultant(&f, &f).unwrap(), rat(0));
        let a = Poly::from_ints(&[-2, 1]);
        let b = Poly::from_ints(&[-5, 1]);
        assert_eq!(resultant(&a, &b).unwrap(), rat(-3));
        assert!(resultant(&Poly::zero(), &Poly::zero()).is_err());
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&Poly::from_ints(&[1, 0, 1])).unwrap(), rat(-4));
        assert_eq!(
            discriminant(&Poly::from_ints(&[-1221, 0, 0, 1])).unwrap(),
            rat(-40_252_707)
        );
        assert_eq!(discriminant(&Poly::from_ints(&[1, 0, 0, 0, 1])).unwrap(), rat(256));
        assert!(discriminant(&Poly::from_ints(&[1, 1])).is_err());
    }

    #[test]
    fn roots_and_irreducibility() {
        assert!(rational_roots(&Poly::from_ints(&[-1221, 0, 0, 1])).unwrap().is_empty());
        assert_eq!(rational_roots(&Poly::from_ints(&[-1, 0, 1])).unwrap(), vec![rat(1), rat(-1)]);
        let g = Poly::from_ints(&[-729, -351, -162, 0, 3]);
        assert!(rational_roots(&g).unwrap().is_empty());
        assert!(is_irreducible_deg_le_4(&g).unwrap());
        assert!(!is_irreducible_deg_le_4(&Poly::from_ints(&[-1, 0, 0, 0, 1])).unwrap());
        assert!(is_irreducible_deg_le_4(&Poly::from_ints(&[-1221, 0, 0, 1])).unwrap());
        // (x^2 + 1)(x^2 + 3), no rational roots
        assert!(!is_irreducible_deg_le_4(&Poly::from_ints(&[3, 0, 4, 0, 1])).unwrap());
        // (2x^2 + x + 1)(3x^2 - x + 5)
        let p = &Poly::from_ints(&[1, 1, 2]) * &Poly::from_ints(&[5, -1, 3]);
        assert!(!is_irreducible_deg_le_4(&p).unwrap());
        assert!(is_irreducible_deg_le_4(&Poly::from_ints(&[1, 0, 0, 0, 1])).unwrap());
        assert!(is_irreducible_deg_le_4(&Poly::from_ints(&[1, 0, 0, 0, 0, 1])).is_err());
        let with_rational = Poly::new(vec![frac(-1, 4), rat(0), rat(1)]);
        assert_eq!(rational_roots(&with_rational).unwrap(), vec![frac(1, 2), frac(-1, 2)]);
    }

    #[test]
    fn sturm_counts() {
        // (x - 1)(x - 2)(x + 3)(x^2 + 1)
        let f = &(&Poly::from_ints(&[-1, 1]) * &Poly::from_ints(&[-2, 1]))
            * &(&Poly::from_ints(&[3, 1]) * &Poly::from_ints(&[1, 0, 1]));
        let s = SturmSequence::new(&f);
        assert_eq!(s.count_real(), 3);
        let iv = s.isolate();
        assert_eq!(iv.len(), 3);
        for (lo, hi) in &iv {
            assert_eq!(s.count_in(lo, hi), 1);
        }
        let p = s.point_after(&rat(1), &rat(2));
        assert!(p > rat(1) && p < rat(2));
        assert_eq!(SturmSequence::new(&Poly::from_ints(&[1, 0, 1])).count_real(), 0);
    }

    #[test]
    fn display() {
        assert_eq!(Poly::from_ints(&[-243, -117, -54, 0, 1]).to_string(), "x^4 - 54*x^2 - 117*x - 243");
    }
}
