use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::integer::{exact_root, int_valuation, is_prime, squarefree_part};
use crate::error::{invalid, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `p`-adic valuation; `Infinite` only for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl std::ops::Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

pub fn valuation(r: &Rational, p: &BigInt) -> Result<Valuation> {
    if !is_prime(p) || p.is_negative() {
        return invalid(format!("{p} is not a prime"));
    }
    if r.is_zero() {
        return Ok(Valuation::Infinite);
    }
    let v = int_valuation(r.numer(), p) as i64 - int_valuation(r.denom(), p) as i64;
    Ok(Valuation::Finite(v))
}

/// A nonzero rational modulo nonzero rational squares, represented by the
/// unique squarefree integer in the class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareClass(BigInt);

impl SquareClass {
    pub fn representative(&self) -> &BigInt {
        &self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_one()
    }

    pub fn sign(&self) -> i8 {
        if self.0.is_negative() {
            -1
        } else {
            1
        }
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn square_class(r: &Rational) -> Result<SquareClass> {
    if r.is_zero() {
        return invalid("square class of 0");
    }
    // n/d and n*d differ by the square d^2
    let nd = r.numer() * r.denom();
    Ok(SquareClass(squarefree_part(&nd)?))
}

/// Whether `r` is the square of a rational (zero counts).
pub fn is_rational_square(r: &Rational) -> bool {
    rational_root(r, 2).is_some()
}

/// Exact rational `k`-th root, if one exists.
pub fn rational_root(r: &Rational, k: u32) -> Option<Rational> {
    let n = exact_root(r.numer(), k)?;
    let d = exact_root(r.denom(), k)?;
    Some(Rational::new(n, d))
}

/// Height `max(|num|, den)` of a rational in lowest terms.
pub fn height(r: &Rational) -> BigInt {
    let n = r.numer().abs();
    if &n > r.denom() {
        n
    } else {
        r.denom().clone()
    }
}

pub fn lcm_of_denominators<'a>(rs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    use num_integer::Integer;
    rs.into_iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

pub fn gcd_of<'a>(ns: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    use num_integer::Integer;
    ns.into_iter().fold(BigInt::zero(), |acc, n| acc.gcd(n))
}

fn sign_of(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Sign of `u + v sqrt(d)` for `d > 0`.
pub fn surd_sign(u: &Rational, v: &Rational, d: &Rational) -> i8 {
    let (su, sv) = (sign_of(u), sign_of(v));
    if sv == 0 || su == sv {
        return if su == 0 { sv } else { su };
    }
    if su == 0 {
        return sv;
    }
    match (u * u).cmp(&(v * v * d)) {
        Ordering::Greater => su,
        Ordering::Less => sv,
        Ordering::Equal => 0,
    }
}

/// Render as `n` or `n/d`.
pub fn to_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parsed = if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad(s))?;
        let d: BigInt = d.trim().parse().map_err(|_| bad(s))?;
        if d.is_zero() {
            return invalid(format!("zero denominator in {s:?}"));
        }
        Rational::new(n, d)
    } else {
        Rational::from_integer(s.parse().map_err(|_| bad(s))?)
    };
    Ok(parsed)
}

fn bad(s: &str) -> crate::error::Error {
    crate::error::Error::InvalidInput(format!("not a rational: {s:?}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation(&rat(243), &p(3)).unwrap(), Valuation::Finite(5));
        assert_eq!(valuation(&rat(0), &p(7)).unwrap(), Valuation::Infinite);
        assert_eq!(valuation(&frac(9, 4), &p(2)).unwrap(), Valuation::Finite(-2));
        assert!(valuation(&rat(5), &p(6)).is_err());
    }

    #[test]
    fn square_classes() {
        assert_eq!(square_class(&rat(81)).unwrap().representative(), &p(1));
        assert_eq!(square_class(&rat(243)).unwrap().representative(), &p(3));
        assert_eq!(square_class(&rat(-12)).unwrap().representative(), &p(-3));
        assert_eq!(square_class(&frac(2, 9)).unwrap().representative(), &p(2));
        assert_eq!(square_class(&frac(1, 2)).unwrap().representative(), &p(2));
        assert!(square_class(&rat(0)).is_err());
    }

    #[test]
    fn parsing() {
        assert_eq!(parse("-1/3").unwrap(), frac(-1, 3));
        assert_eq!(parse(" 27 ").unwrap(), rat(27));
        assert_eq!(parse("4/6").unwrap(), frac(2, 3));
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
        assert_eq!(to_string(&frac(-1, 3)), "-1/3");
    }
}
