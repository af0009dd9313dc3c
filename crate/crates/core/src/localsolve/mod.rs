//! Local solubility of genus one models over `Q_p` and `R`.

mod padic;
mod real;
mod tree;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::arith::integer::{is_prime_u, prime_divisors};
use crate::arith::poly::discriminant;
use crate::arith::rational::{rat, Rational};
use crate::covering::{resolvent_jacobian, QuadricIntersectionModel, QuarticCurveModel};
use crate::ecq::ShortWeierstrassCurve;
use crate::error::{Error, Result};

pub use padic::{
    extend_witness, quadric_intersection_locally_soluble, quartic_locally_soluble, verify_quartic_witness,
    verify_witness, IntegralQuadrics,
};
pub use real::{real_soluble_quadric_intersection, real_soluble_quartic, verify_real_witness, RealCrossing, NEWTON_TOLERANCE};
pub use tree::SearchLimits;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Real,
    Prime(u64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => write!(f, "REAL"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Soluble,
    Insoluble,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Soluble => "SOLUBLE",
            Status::Insoluble => "INSOLUBLE",
            Status::Unknown => "UNKNOWN",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CertificateKind {
    LiftingWitness,
    ExhaustedResidueTree,
    DefiniteForm,
    SignAnalysis,
}

impl fmt::Display for CertificateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CertificateKind::LiftingWitness => "lifting-witness",
            CertificateKind::ExhaustedResidueTree => "exhausted-residue-tree",
            CertificateKind::DefiniteForm => "definite-form",
            CertificateKind::SignAnalysis => "sign-analysis",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Coordinates {
    /// Primitive integer vector, meaningful modulo `p^k`.
    Integral(Vec<BigInt>),
    Real(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum LiftingData {
    /// Columns of the Jacobian minor used for Hensel lifting and its
    /// `p`-adic valuation `t`; liftable when `k >= 2t + 1`.
    Minor { columns: Vec<usize>, valuation: u32 },
    Newton { residual: f64, jacobian_rank: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocalWitness {
    pub place: Place,
    /// `k`, the witness is a point modulo `p^k`. Zero at the real place.
    pub precision: u32,
    pub coordinates: Coordinates,
    pub lifting: LiftingData,
}

impl LocalWitness {
    /// Witness `coords mod p^k` with no lifting data yet.
    pub fn padic(p: u64, k: u32, coords: &[i64]) -> Self {
        LocalWitness {
            place: Place::Prime(p),
            precision: k,
            coordinates: Coordinates::Integral(coords.iter().map(|&c| BigInt::from(c)).collect()),
            lifting: LiftingData::Minor { columns: Vec::new(), valuation: 0 },
        }
    }

    pub fn integral_coordinates(&self) -> Option<&[BigInt]> {
        match &self.coordinates {
            Coordinates::Integral(c) => Some(c),
            Coordinates::Real(_) => None,
        }
    }
}

impl fmt::Display for LocalWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.coordinates {
            Coordinates::Integral(c) => {
                let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                write!(f, "({}) mod {}^{}", parts.join(","), self.place, self.precision)
            }
            Coordinates::Real(c) => {
                let parts: Vec<String> = c.iter().map(|x| format!("{x:.12}")).collect();
                write!(f, "({}) over R", parts.join(","))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Certificate {
    /// The witness lifts; at the real place an exact sign-change
    /// certificate may accompany the numerical point.
    Lifting { exact_real: Option<RealCrossing> },
    /// Every branch died before the depth bound; `alive_per_level[i]` is
    /// the number of live residue classes modulo `p^(i+1)`.
    ExhaustedTree { depth_bound: u32, alive_per_level: Vec<usize> },
    /// `lambda M1 + mu M2` is definite.
    DefiniteForm { lambda: Rational, mu: Rational, positive: bool },
    SignAnalysis { reason: String },
}

impl Certificate {
    pub fn kind(&self) -> CertificateKind {
        match self {
            Certificate::Lifting { .. } => CertificateKind::LiftingWitness,
            Certificate::ExhaustedTree { .. } => CertificateKind::ExhaustedResidueTree,
            Certificate::DefiniteForm { .. } => CertificateKind::DefiniteForm,
            Certificate::SignAnalysis { .. } => CertificateKind::SignAnalysis,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolubilityVerdict {
    pub place: Place,
    pub status: Status,
    pub witness: Option<LocalWitness>,
    pub certificate: Option<Certificate>,
}

impl SolubilityVerdict {
    pub fn certificate_kind(&self) -> Option<CertificateKind> {
        self.certificate.as_ref().map(Certificate::kind)
    }
}

/// Either kind of genus one model handled here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenusOneModel {
    Quartic(QuarticCurveModel),
    Quadrics(QuadricIntersectionModel),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BadPrimes {
    /// `{2}` together with the primes of the relevant discriminant.
    pub raw: Vec<BigInt>,
    /// `raw` cut down to `2`, `3` and the primes of bad reduction of the
    /// minimal Jacobian.
    pub filtered: Vec<BigInt>,
}

/// The discriminant whose primes bound the bad set, and the Jacobian.
fn discriminant_and_jacobian(model: &GenusOneModel) -> Result<(Rational, ShortWeierstrassCurve)> {
    match model {
        GenusOneModel::Quartic(c) => {
            let c = c.integral();
            let d = &c.a * discriminant(&c.quartic())?;
            if d.is_zero() {
                return Err(Error::InvalidInput(format!("{c} is singular")));
            }
            Ok((d, resolvent_jacobian(&c)?.curve))
        }
        GenusOneModel::Quadrics(q) => {
            q.check_smooth().map_err(|e| Error::InvalidInput(e.to_string()))?;
            let forms = IntegralQuadrics::new(q);
            let f = forms.hessian_pencil();
            let (i, j) = f.invariants();
            let jac = ShortWeierstrassCurve::new(rat(-27) * i, rat(-27) * j)
                .map_err(|e| Error::InvalidInput(e.to_string()))?;
            Ok((f.discriminant(), jac))
        }
    }
}

fn primes_of(r: &Rational) -> Result<Vec<BigInt>> {
    let mut out = prime_divisors(r.numer())?;
    out.extend(prime_divisors(r.denom())?);
    out.sort();
    out.dedup();
    Ok(out)
}

/// A finite set of primes outside which the model is smooth mod `p`.
///
/// For quartics this is `{2}` and the primes of `a disc(g)` on the integral
/// model; for quadric pairs the primes of the discriminant of
/// `det(l H1 + m H2)`, `Hi` the integral Hessians of the primitive forms.
pub fn bad_primes(model: &GenusOneModel) -> Result<BadPrimes> {
    let (d, jac) = discriminant_and_jacobian(model)?;
    let mut raw = vec![BigInt::from(2)];
    raw.extend(primes_of(&d)?);
    raw.sort();
    raw.dedup();
    let (minimal, _) = jac.reduced_integral_model()?;
    let mut keep = vec![BigInt::from(2), BigInt::from(3)];
    keep.extend(primes_of(&minimal.disc_core())?);
    let filtered = raw.iter().filter(|p| keep.contains(p)).cloned().collect();
    Ok(BadPrimes { raw, filtered })
}

pub(crate) fn check_prime(p: u64) -> Result<()> {
    if is_prime_u(p) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{p} is not prime")))
    }
}

pub(crate) fn depth_bound(model: &GenusOneModel, p: u64) -> Result<u32> {
    let (d, _) = discriminant_and_jacobian(model)?;
    let v = crate::arith::rational::valuation(&d, &BigInt::from(p))?
        .finite()
        .unwrap_or(0)
        .max(0) as u32;
    Ok(2 * v + 3 + if p == 2 { 2 } else { 0 })
}

/// Local solubility at `p`, dispatching on the model kind.
pub fn locally_soluble(model: &GenusOneModel, p: u64, limits: &SearchLimits) -> Result<SolubilityVerdict> {
    match model {
        GenusOneModel::Quartic(c) => quartic_locally_soluble(c, p, limits),
        GenusOneModel::Quadrics(q) => quadric_intersection_locally_soluble(q, p, limits),
    }
}

pub fn real_soluble(model: &GenusOneModel) -> Result<SolubilityVerdict> {
    match model {
        GenusOneModel::Quartic(c) => Ok(real_soluble_quartic(c)),
        GenusOneModel::Quadrics(q) => real_soluble_quadric_intersection(q),
    }
}

/// Primes below this bound outside the bad set get an explicit mod `p`
/// smooth-point check.
pub const GOOD_PRIME_SPOT_CHECK: u64 = 50;

#[derive(Debug, Clone, PartialEq)]
pub struct GoodReduction {
    pub status: Status,
    /// Good primes checked explicitly, each with the smooth point found.
    pub spot_checks: Vec<(u64, LocalWitness)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocalSolubilityReport {
    pub bad_primes: BadPrimes,
    pub verdicts: Vec<SolubilityVerdict>,
    pub good_reduction: GoodReduction,
}

impl LocalSolubilityReport {
    /// Conjunction over all places; `Unknown` if nothing fails but some
    /// place is undecided.
    pub fn overall(&self) -> Status {
        let all = self.verdicts.iter().map(|v| v.status).chain([self.good_reduction.status]);
        let mut out = Status::Soluble;
        for s in all {
            match s {
                Status::Insoluble => return Status::Insoluble,
                Status::Unknown => out = Status::Unknown,
                Status::Soluble => {}
            }
        }
        out
    }

    pub fn verdict_at(&self, place: Place) -> Option<&SolubilityVerdict> {
        self.verdicts.iter().find(|v| v.place == place)
    }
}

/// Verdicts at the real place and at each raw bad prime, plus one entry
/// for all remaining primes.
pub fn everywhere_locally_soluble(model: &GenusOneModel, limits: &SearchLimits) -> Result<LocalSolubilityReport> {
    let bad = bad_primes(model)?;
    let mut verdicts = vec![real_soluble(model)?];
    for p in &bad.raw {
        let p = p.to_u64().ok_or_else(|| Error::ResourceLimit {
            prime: 0,
            detail: format!("bad prime {p} is too large for residue-tree search"),
        })?;
        verdicts.push(locally_soluble(model, p, limits)?);
    }
    let mut spot_checks = Vec::new();
    for p in (3..GOOD_PRIME_SPOT_CHECK).filter(|&p| is_prime_u(p)) {
        if bad.raw.contains(&BigInt::from(p)) {
            continue;
        }
        let w = padic::smooth_point_mod_p(model, p)?.ok_or_else(|| Error::TheoremViolation {
            prime: p,
            detail: "no smooth point mod p at a prime of good reduction".into(),
        })?;
        spot_checks.push((p, w));
    }
    Ok(LocalSolubilityReport {
        bad_primes: bad,
        verdicts,
        good_reduction: GoodReduction { status: Status::Soluble, spot_checks },
    })
}
