//! Elliptic curves `y^2 = x^3 + A x + B` over Q.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::integer::{divisors, exact_root, factorize, is_prime_u};
use crate::arith::poly::{rational_roots, Poly};
use crate::arith::rational::{rat, rational_root, to_string, Rational};
use crate::error::{invalid, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortWeierstrassCurve {
    a: Rational,
    b: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CurvePoint {
    Infinity,
    Affine { x: Rational, y: Rational },
}

impl CurvePoint {
    pub fn affine(x: Rational, y: Rational) -> Self {
        CurvePoint::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => write!(f, "O"),
            CurvePoint::Affine { x, y } => write!(f, "({}, {})", to_string(x), to_string(y)),
        }
    }
}

impl ShortWeierstrassCurve {
    pub fn new(a: Rational, b: Rational) -> Result<Self> {
        let e = ShortWeierstrassCurve { a, b };
        if e.disc_core().is_zero() {
            return invalid(format!("singular curve {e}"));
        }
        Ok(e)
    }

    pub fn from_ints(a: i64, b: i64) -> Result<Self> {
        Self::new(rat(a), rat(b))
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// `4A^3 + 27B^2`
    pub fn disc_core(&self) -> Rational {
        rat(4) * &self.a * &self.a * &self.a + rat(27) * &self.b * &self.b
    }

    /// `-16 (4A^3 + 27B^2)`
    pub fn discriminant(&self) -> Rational {
        rat(-16) * self.disc_core()
    }

    pub fn rhs(&self, x: &Rational) -> Rational {
        x * x * x + &self.a * x + &self.b
    }

    pub fn cubic(&self) -> Poly {
        Poly::new(vec![self.b.clone(), self.a.clone(), Rational::zero(), Rational::one()])
    }

    pub fn contains(&self, p: &CurvePoint) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => y * y == self.rhs(x),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }

    pub fn neg(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::affine(x.clone(), -y.clone()),
        }
    }

    pub fn add(&self, p: &CurvePoint, q: &CurvePoint) -> Result<CurvePoint> {
        for pt in [p, q] {
            if !self.contains(pt) {
                return invalid(format!("{pt} is not on {self}"));
            }
        }
        Ok(self.add_unchecked(p, q))
    }

    fn add_unchecked(&self, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
        let (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) = (p, q)
        else {
            return if p.is_infinity() { q.clone() } else { p.clone() };
        };
        let slope = if x1 == x2 {
            if (y1 + y2).is_zero() {
                return CurvePoint::Infinity;
            }
            (rat(3) * x1 * x1 + &self.a) / (rat(2) * y1)
        } else {
            (y2 - y1) / (x2 - x1)
        };
        let x3 = &slope * &slope - x1 - x2;
        let y3 = &slope * (x1 - &x3) - y1;
        CurvePoint::affine(x3, y3)
    }

    pub fn mul(&self, k: u64, p: &CurvePoint) -> CurvePoint {
        let mut acc = CurvePoint::Infinity;
        let mut base = p.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_unchecked(&acc, &base);
            }
            base = self.add_unchecked(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// Reduction of `A`, `B` modulo an odd prime of good reduction.
    fn reduce_mod(&self, p: u64) -> Result<(u64, u64)> {
        if p < 5 || !is_prime_u(p) {
            return invalid(format!("point counting needs a prime p >= 5, got {p}"));
        }
        let bp = BigInt::from(p);
        let red = |r: &Rational| -> Option<u64> {
            let d = r.denom().mod_floor(&bp);
            if d.is_zero() {
                return None;
            }
            let inv = d.modpow(&(&bp - 2u32), &bp);
            (r.numer() * inv).mod_floor(&bp).to_u64()
        };
        let core = self.disc_core();
        let bad = red(&core).is_none_or(|c| c == 0);
        match (red(&self.a), red(&self.b)) {
            (Some(a), Some(b)) if !bad => Ok((a, b)),
            _ => invalid(format!("{self} has bad reduction at {p}")),
        }
    }

    /// `#E(F_p)` including the point at infinity.
    pub fn count_points_mod_p(&self, p: u64) -> Result<u64> {
        let (a, b) = self.reduce_mod(p)?;
        let mut roots = vec![0u64; p as usize];
        for y in 0..p {
            roots[((y * y) % p) as usize] += 1;
        }
        let mut total = 1u64;
        for x in 0..p {
            let v = ((x * x % p) * x % p + a * x % p + b) % p;
            total += roots[v as usize];
        }
        Ok(total)
    }

    pub fn rational_two_torsion(&self) -> Vec<CurvePoint> {
        rational_roots(&self.cubic())
            .expect("cubic is nonzero")
            .into_iter()
            .map(|r| CurvePoint::affine(r, Rational::zero()))
            .collect()
    }

    /// Isomorphism over Q: `A2 = u^4 A1` and `B2 = u^6 B1` for some rational `u`.
    pub fn is_isomorphic_over_q(&self, other: &Self) -> bool {
        let (a1, b1, a2, b2) = (&self.a, &self.b, &other.a, &other.b);
        if a1.is_zero() != a2.is_zero() || b1.is_zero() != b2.is_zero() {
            return false;
        }
        if a1.is_zero() {
            return rational_root(&(b2 / b1), 6).is_some();
        }
        if b1.is_zero() {
            return rational_root(&(a2 / a1), 4).is_some();
        }
        // u^2 = (B2 / B1) / (A2 / A1)
        let u2 = (b2 * a1) / (b1 * a2);
        match rational_root(&u2, 2) {
            Some(_) => &u2 * &u2 * a1 == *a2 && &u2 * &u2 * &u2 * b1 == *b2,
            None => false,
        }
    }

    /// Integral model `(u^4 A, u^6 B)` with `u` chosen so that no prime `p`
    /// has `p^4 | A` and `p^6 | B`. Returns the model and `u`.
    pub fn reduced_integral_model(&self) -> Result<(Self, Rational)> {
        let l = self.a.denom().lcm(self.b.denom());
        let mut u = Rational::from_integer(l.clone());
        let mut a = (&self.a * Rational::from_integer(num_traits::pow(l.clone(), 4))).to_integer();
        let mut b = (&self.b * Rational::from_integer(num_traits::pow(l, 6))).to_integer();
        let g = a.gcd(&b);
        if !g.is_zero() {
            for (p, _) in factorize(&g)? {
                let p4 = num_traits::pow(p.clone(), 4);
                let p6 = num_traits::pow(p.clone(), 6);
                while (a.is_zero() || (&a % &p4).is_zero()) && (b.is_zero() || (&b % &p6).is_zero()) {
                    a /= &p4;
                    b /= &p6;
                    u /= Rational::from_integer(p.clone());
                }
            }
        }
        Ok((Self::new(Rational::from_integer(a), Rational::from_integer(b))?, u))
    }

    /// Certificate that `E(Q)_tors` is trivial, or a torsion point showing it
    /// is not.
    pub fn torsion_certificate(&self) -> Result<TorsionCertificate> {
        if !self.is_integral() {
            return invalid(format!("torsion certificate needs an integral model, got {self}"));
        }
        let two = self.rational_two_torsion();
        let mut cert = TorsionCertificate {
            verdict: TorsionVerdict::Inconclusive,
            route: None,
            point_counts: Vec::new(),
            count_gcd: 0,
            lutz_nagell_candidates: Vec::new(),
            witness: None,
        };
        if let Some(p) = two.into_iter().next() {
            cert.verdict = TorsionVerdict::NonTrivial;
            cert.route = Some(TorsionRoute::TwoTorsion);
            cert.witness = Some(p);
            return Ok(cert);
        }

        for p in self.gcd_primes() {
            cert.point_counts.push((p, self.count_points_mod_p(p)?));
        }
        cert.count_gcd = cert.point_counts.iter().fold(0u64, |g, &(_, n)| g.gcd(&n));
        if cert.count_gcd == 1 {
            cert.verdict = TorsionVerdict::Trivial;
            cert.route = Some(TorsionRoute::PointCountGcd);
            return Ok(cert);
        }

        let core = self.disc_core().to_integer();
        let mut bound = BigInt::one();
        for (p, e) in factorize(&core)? {
            bound *= num_traits::pow(p, (e / 2) as usize);
        }
        let ys = divisors(&bound)?;
        if ys.len() > 1_000_000 {
            return Ok(cert);
        }
        for y in ys {
            let y = Rational::from_integer(y);
            let shifted = Poly::new(vec![
                &self.b - &y * &y,
                self.a.clone(),
                Rational::zero(),
                Rational::one(),
            ]);
            for x in rational_roots(&shifted)? {
                if !x.is_integer() {
                    continue;
                }
                let pt = CurvePoint::affine(x, y.clone());
                cert.lutz_nagell_candidates.push(pt.clone());
                if self.is_torsion(&pt) {
                    cert.verdict = TorsionVerdict::NonTrivial;
                    cert.route = Some(TorsionRoute::LutzNagell);
                    cert.witness = Some(pt);
                    return Ok(cert);
                }
            }
        }
        cert.verdict = TorsionVerdict::Trivial;
        cert.route = Some(TorsionRoute::LutzNagell);
        Ok(cert)
    }

    /// Torsion points on integral models have integral multiples and order
    /// at most 12.
    fn is_torsion(&self, p: &CurvePoint) -> bool {
        let mut q = p.clone();
        for _ in 1..=12 {
            match &q {
                CurvePoint::Infinity => return true,
                CurvePoint::Affine { x, y } if !x.is_integer() || !y.is_integer() => return false,
                _ => {}
            }
            q = self.add_unchecked(&q, p);
        }
        false
    }

    /// First good primes `p >= 5`: at least five, with at least two
    /// `p = 1 (mod 3)` since `j = 0` curves are supersingular at the others.
    fn gcd_primes(&self) -> Vec<u64> {
        let mut out = Vec::new();
        let mut ones = 0;
        let mut p = 5u64;
        while out.len() < 5 || ones < 2 {
            if is_prime_u(p) && self.reduce_mod(p).is_ok() && (out.len() < 5 || p % 3 == 1) {
                if p % 3 == 1 {
                    ones += 1;
                }
                out.push(p);
            }
            p += 2;
        }
        out
    }
}

impl fmt::Display for ShortWeierstrassCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = {}", self.cubic())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TorsionVerdict {
    Trivial,
    NonTrivial,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TorsionRoute {
    TwoTorsion,
    PointCountGcd,
    LutzNagell,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionCertificate {
    pub verdict: TorsionVerdict,
    pub route: Option<TorsionRoute>,
    /// `(p, #E(F_p))` for the good primes used by the gcd route.
    pub point_counts: Vec<(u64, u64)>,
    pub count_gcd: u64,
    /// Integral points with `y^2 | 4A^3 + 27B^2` found by the Lutz-Nagell route.
    pub lutz_nagell_candidates: Vec<CurvePoint>,
    pub witness: Option<CurvePoint>,
}

impl TorsionCertificate {
    pub fn is_trivial(&self) -> bool {
        self.verdict == TorsionVerdict::Trivial
    }
}

/// Whether `r` is a sixth power of a rational; used for `A = 0` twists.
pub fn is_rational_sixth_power(r: &Rational) -> bool {
    r.is_positive() && exact_root(r.numer(), 6).is_some() && exact_root(r.denom(), 6).is_some()
}
