use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::tree::{self, lifting_criterion, vanishes_mod, Chart, Liftable, Outcome, SearchLimits, System};
use super::{
    check_prime, depth_bound, Certificate, Coordinates, GenusOneModel, LiftingData, LocalWitness, Place,
    SolubilityVerdict, Status,
};
use crate::arith::matrix::Matrix;
use crate::arith::rational::{gcd_of, lcm_of_denominators, Rational};
use crate::covering::{BinaryQuarticForm, QuadricIntersectionModel, QuarticCurveModel};
use crate::error::{Error, Result};

/// A pair of quadratic forms with coprime integer coefficients,
/// `Q(x) = sum_i c_ii x_i^2 + sum_{i<j} c_ij x_i x_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralQuadrics {
    coeffs: [Vec<Vec<BigInt>>; 2],
}

fn primitive_coefficients(m: &Matrix) -> Vec<Vec<BigInt>> {
    let n = m.len();
    let two = Rational::from_integer(BigInt::from(2));
    let raw: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match i.cmp(&j) {
                    std::cmp::Ordering::Less => &m[i][j] * &two,
                    std::cmp::Ordering::Equal => m[i][i].clone(),
                    std::cmp::Ordering::Greater => Rational::zero(),
                })
                .collect()
        })
        .collect();
    let l = Rational::from_integer(lcm_of_denominators(raw.iter().flatten()));
    let ints: Vec<Vec<BigInt>> = raw.iter().map(|r| r.iter().map(|x| (x * &l).to_integer()).collect()).collect();
    let g = gcd_of(ints.iter().flatten());
    if g.is_zero() {
        return ints;
    }
    ints.iter().map(|r| r.iter().map(|x| x / &g).collect()).collect()
}

impl IntegralQuadrics {
    pub fn new(q: &QuadricIntersectionModel) -> Self {
        IntegralQuadrics { coeffs: [primitive_coefficients(q.m1()), primitive_coefficients(q.m2())] }
    }

    /// Coefficient `c_ij` (`i <= j`) of form `f`.
    pub fn coefficient(&self, f: usize, i: usize, j: usize) -> &BigInt {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        &self.coeffs[f][i][j]
    }

    /// Integer Hessian matrix of form `f`.
    pub fn hessian(&self, f: usize) -> Matrix {
        (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| {
                        let c = Rational::from_integer(self.coefficient(f, i, j).clone());
                        if i == j {
                            c * Rational::from_integer(BigInt::from(2))
                        } else {
                            c
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// `det(l H1 + m H2)`.
    pub fn hessian_pencil(&self) -> BinaryQuarticForm {
        QuadricIntersectionModel::new(self.hessian(0), self.hessian(1))
            .expect("hessians are symmetric 4x4")
            .pencil_determinant()
    }

    pub fn values(&self, x: &[BigInt]) -> [BigInt; 2] {
        [self.value(0, x), self.value(1, x)]
    }

    fn value(&self, f: usize, x: &[BigInt]) -> BigInt {
        let c = &self.coeffs[f];
        let mut acc = BigInt::zero();
        for i in 0..4 {
            for j in i..4 {
                acc += &c[i][j] * &x[i] * &x[j];
            }
        }
        acc
    }

    fn gradient(&self, f: usize, x: &[BigInt]) -> Vec<BigInt> {
        (0..4)
            .map(|k| {
                let mut acc = BigInt::zero();
                for j in 0..4 {
                    let c = self.coefficient(f, k, j);
                    if j == k {
                        acc += c * &x[k] * 2;
                    } else {
                        acc += c * &x[j];
                    }
                }
                acc
            })
            .collect()
    }
}

impl System for IntegralQuadrics {
    fn arity(&self) -> usize {
        4
    }

    fn eval(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.values(x).to_vec()
    }

    fn jacobian(&self, x: &[BigInt]) -> Vec<Vec<BigInt>> {
        vec![self.gradient(0, x), self.gradient(1, x)]
    }
}

/// `Y^2 - (a X^4 + c X^2 Z^2 + d X Z^3 + e Z^4)` on an integral model.
struct QuarticSystem {
    a: BigInt,
    c: BigInt,
    d: BigInt,
    e: BigInt,
}

impl QuarticSystem {
    fn new(c: &QuarticCurveModel) -> Self {
        let m = c.integral();
        QuarticSystem {
            a: m.a.to_integer(),
            c: m.c.to_integer(),
            d: m.d.to_integer(),
            e: m.e.to_integer(),
        }
    }

    /// `(X, Y, Z)` with `Z = 1`, then `(1, Y, Z)` with `p | Z`.
    fn charts() -> [Chart; 2] {
        [Chart { fixed: 2, zero: vec![] }, Chart { fixed: 0, zero: vec![2] }]
    }
}

impl System for QuarticSystem {
    fn arity(&self) -> usize {
        3
    }

    fn eval(&self, v: &[BigInt]) -> Vec<BigInt> {
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let x2 = x * x;
        let z2 = z * z;
        let g = &self.a * &x2 * &x2 + &self.c * &x2 * &z2 + &self.d * x * &z2 * z + &self.e * &z2 * &z2;
        vec![y * y - g]
    }

    fn jacobian(&self, v: &[BigInt]) -> Vec<Vec<BigInt>> {
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let x2 = x * x;
        let z2 = z * z;
        let dx: BigInt = &self.a * 4 * &x2 * x + &self.c * 2 * x * &z2 + &self.d * &z2 * z;
        let dz: BigInt = &self.c * 2 * &x2 * z + &self.d * 3 * x * &z2 + &self.e * 4 * &z2 * z;
        vec![vec![-dx, y * 2, -dz]]
    }
}

fn witness(p: u64, found: &Liftable) -> LocalWitness {
    LocalWitness {
        place: Place::Prime(p),
        precision: found.level,
        coordinates: Coordinates::Integral(found.coords.clone()),
        lifting: LiftingData::Minor { columns: found.columns.clone(), valuation: found.valuation },
    }
}

fn verdict(p: u64, outcome: Outcome, depth: u32) -> SolubilityVerdict {
    match outcome {
        Outcome::Found(f) => SolubilityVerdict {
            place: Place::Prime(p),
            status: Status::Soluble,
            witness: Some(witness(p, &f)),
            certificate: Some(Certificate::Lifting { exact_real: None }),
        },
        Outcome::Exhausted { alive_per_level } => SolubilityVerdict {
            place: Place::Prime(p),
            status: Status::Insoluble,
            witness: None,
            certificate: Some(Certificate::ExhaustedTree { depth_bound: depth, alive_per_level }),
        },
    }
}

fn effective_depth(bound: u32, limits: &SearchLimits) -> u32 {
    limits.depth_cap.map_or(bound, |c| c.min(bound))
}

/// Decides whether `y^2 = g(x)` has a point over `Q_p`, including points
/// with `x` of negative valuation. Witnesses are `(X, Y, Z)` on the
/// integral model `y^2 = D^2 g(x)`.
pub fn quartic_locally_soluble(c: &QuarticCurveModel, p: u64, limits: &SearchLimits) -> Result<SolubilityVerdict> {
    check_prime(p)?;
    let bound = depth_bound(&GenusOneModel::Quartic(c.clone()), p)?;
    let depth = effective_depth(bound, limits);
    let sys = QuarticSystem::new(c);
    let outcome = tree::search(&sys, &QuarticSystem::charts(), p, depth, limits)?;
    Ok(verdict(p, outcome, bound))
}

/// Decides whether the quadric pair has a point over `Q_p`.
pub fn quadric_intersection_locally_soluble(
    q: &QuadricIntersectionModel,
    p: u64,
    limits: &SearchLimits,
) -> Result<SolubilityVerdict> {
    check_prime(p)?;
    let bound = depth_bound(&GenusOneModel::Quadrics(q.clone()), p)?;
    let depth = effective_depth(bound, limits);
    let sys = IntegralQuadrics::new(q);
    let outcome = tree::search(&sys, &Chart::projective(4), p, depth, limits)?;
    Ok(verdict(p, outcome, bound))
}

/// A point mod `p` passing the lifting criterion at precision 1.
pub(crate) fn smooth_point_mod_p(model: &GenusOneModel, p: u64) -> Result<Option<LocalWitness>> {
    check_prime(p)?;
    let limits = SearchLimits { depth_cap: Some(1), node_cap: usize::MAX };
    let outcome = match model {
        GenusOneModel::Quartic(c) => tree::search(&QuarticSystem::new(c), &QuarticSystem::charts(), p, 1, &limits),
        GenusOneModel::Quadrics(q) => tree::search(&IntegralQuadrics::new(q), &Chart::projective(4), p, 1, &limits),
    };
    match outcome {
        Ok(Outcome::Found(f)) => Ok(Some(witness(p, &f))),
        Ok(Outcome::Exhausted { .. }) | Err(Error::ResourceLimit { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn check_system<S: System>(sys: &S, w: &LocalWitness, primitive: &[usize]) -> bool {
    let (Place::Prime(p), Some(x)) = (w.place, w.integral_coordinates()) else {
        return false;
    };
    if x.len() != sys.arity() || w.precision == 0 {
        return false;
    }
    let pb = BigInt::from(p);
    let pk = num_traits::pow(pb.clone(), w.precision as usize);
    if primitive.iter().all(|&i| x[i].is_multiple_of(&pb)) || !vanishes_mod(sys, x, &pk) {
        return false;
    }
    match &w.lifting {
        LiftingData::Minor { columns, valuation } if !columns.is_empty() => {
            let jac = sys.jacobian(x);
            let value = match columns.as_slice() {
                [i] if jac.len() == 1 => jac[0][*i].clone(),
                [i, j] if jac.len() == 2 => &jac[0][*i] * &jac[1][*j] - &jac[0][*j] * &jac[1][*i],
                _ => return false,
            };
            if value.is_zero() || crate::arith::integer::int_valuation(&value, &pb) != *valuation {
                return false;
            }
            w.precision > 2 * valuation
        }
        LiftingData::Minor { .. } => lifting_criterion(sys, x, &pb, w.precision).is_some(),
        LiftingData::Newton { .. } => false,
    }
}

/// Pure re-check of a `p`-adic witness on a quadric pair: both forms vanish
/// mod `p^k`, the point is primitive, and the recorded Jacobian minor (or,
/// if none is recorded, the best one) has valuation `t` with `k >= 2t + 1`.
pub fn verify_witness(q: &QuadricIntersectionModel, w: &LocalWitness) -> bool {
    check_system(&IntegralQuadrics::new(q), w, &[0, 1, 2, 3])
}

/// As [`verify_witness`] for an `(X, Y, Z)` witness on the integral quartic
/// model; `X` and `Z` must not both be divisible by `p`.
pub fn verify_quartic_witness(c: &QuarticCurveModel, w: &LocalWitness) -> bool {
    check_system(&QuarticSystem::new(c), w, &[0, 2])
}

/// Refines a witness that vanishes mod `p^k` but fails the lifting
/// criterion at that precision, by searching its residue class to the
/// depth bound. Returns a verified witness in chart normal form (first unit
/// coordinate 1), or `None` when the class holds no liftable point.
pub fn extend_witness(
    q: &QuadricIntersectionModel,
    w: &LocalWitness,
    limits: &SearchLimits,
) -> Result<Option<LocalWitness>> {
    let sys = IntegralQuadrics::new(q);
    let (Place::Prime(p), Some(x)) = (w.place, w.integral_coordinates()) else {
        return Ok(None);
    };
    check_prime(p)?;
    let pb = BigInt::from(p);
    let k = w.precision;
    let pk = num_traits::pow(pb.clone(), k as usize);
    if x.len() != 4 || k == 0 || !vanishes_mod(&sys, x, &pk) {
        return Ok(None);
    }
    let Some(lead) = x.iter().position(|c| !c.is_multiple_of(&pb)) else {
        return Ok(None);
    };
    let inv = x[lead].extended_gcd(&pk).x;
    let normal: Vec<BigInt> = x.iter().map(|c| (c * &inv).mod_floor(&pk)).collect();
    debug_assert!(normal[lead].is_one());
    let chart = Chart { fixed: lead, zero: (0..lead).collect() };
    let bound = depth_bound(&GenusOneModel::Quadrics(q.clone()), p)?.max(k + 1);
    let depth = effective_depth(bound, limits);
    match tree::search_below(&sys, &chart, normal, p, k, depth, limits)? {
        Outcome::Found(f) => Ok(Some(witness(p, &f))),
        Outcome::Exhausted { .. } => Ok(None),
    }
}
