//! The surface `y^2 = g(t) p(x), z^2 = g(t) q(x)`, its twist decomposition,
//! point search and the adelic verdict.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::arith::poly::{discriminant, is_irreducible_deg_le_4, resultant, Poly};
use crate::arith::rational::{
    height, rat, rational_root, square_class, surd_sign, to_string, valuation, Rational, SquareClass,
};
use crate::covering::{BinaryQuarticForm, QuadricIntersectionModel};
use crate::ecq::{ShortWeierstrassCurve, TorsionCertificate};
use crate::error::{invalid, Error, Result};
use crate::localsolve::{everywhere_locally_soluble, GenusOneModel, LocalSolubilityReport, SearchLimits, Status};

/// `y^2 = g(t) p(x), z^2 = g(t) q(x)` with quartic `g` and monic quadratic
/// `p`, `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceModel {
    pub g: Poly,
    pub p: Poly,
    pub q: Poly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationItem {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub items: Vec<ValidationItem>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn failures(&self) -> Vec<&ValidationItem> {
        self.items.iter().filter(|i| !i.passed).collect()
    }
}

fn is_monic_integral_quadratic(f: &Poly) -> bool {
    f.degree() == Some(2) && f.leading().is_one() && f.is_integral()
}

/// Checks every invariant of the defining data and reports each one.
pub fn validate_surface(s: &SurfaceModel) -> ValidationReport {
    let mut items = Vec::new();
    let mut push = |name, passed, detail: String| items.push(ValidationItem { name, passed, detail });

    let g_deg = s.g.degree() == Some(4);
    push("g-quartic", g_deg, format!("deg g = {}", s.g.degree().map_or("-inf".into(), |d| d.to_string())));
    push("g-integral", s.g.is_integral(), format!("g = {}", s.g));
    let g_disc = if g_deg { discriminant(&s.g).ok() } else { None };
    push(
        "g-smooth",
        g_disc.as_ref().is_some_and(|d| !d.is_zero()),
        g_disc.map_or("not a quartic".into(), |d| format!("disc g = {}", to_string(&d))),
    );
    for (name, f) in [("p-monic-quadratic", &s.p), ("q-monic-quadratic", &s.q)] {
        push(name, is_monic_integral_quadratic(f), format!("{f}"));
    }
    let quadratics = is_monic_integral_quadratic(&s.p) && is_monic_integral_quadratic(&s.q);
    match resultant(&s.p, &s.q) {
        Ok(r) => push("resultant-unit", r.abs().is_one(), format!("Res(p, q) = {}", to_string(&r))),
        Err(e) => push("resultant-unit", false, e.to_string()),
    }
    for (name, f) in [("p-positive", &s.p), ("q-positive", &s.q)] {
        match discriminant(f) {
            Ok(d) if quadratics => push(name, d.is_negative(), format!("disc = {}", to_string(&d))),
            Ok(d) => push(name, false, format!("disc = {}, not a monic quadratic", to_string(&d))),
            Err(e) => push(name, false, e.to_string()),
        }
    }
    ValidationReport { items }
}

impl SurfaceModel {
    /// No validation; see [`validate_surface`].
    pub fn new_unchecked(g: Poly, p: Poly, q: Poly) -> Self {
        SurfaceModel { g, p, q }
    }

    pub fn new(g: Poly, p: Poly, q: Poly) -> Result<Self> {
        let s = SurfaceModel { g, p, q };
        let report = validate_surface(&s);
        if !report.is_valid() {
            let failed: Vec<String> =
                report.failures().iter().map(|i| format!("{} ({})", i.name, i.detail)).collect();
            return invalid(format!("surface data fails: {}", failed.join("; ")));
        }
        Ok(s)
    }

    /// `g(t)` on the chart, with `g(infinity)` the leading coefficient.
    pub fn g_value(&self, t: &Coord) -> Rational {
        match t {
            Coord::Finite(t) => self.g.eval(t),
            Coord::Infinity => self.g.coeff(4),
        }
    }

    /// `(p(x), q(x))`, both 1 at infinity.
    pub fn pq_values(&self, x: &Coord) -> (Rational, Rational) {
        match x {
            Coord::Finite(x) => (self.p.eval(x), self.q.eval(x)),
            Coord::Infinity => (self.p.leading(), self.q.leading()),
        }
    }

    pub fn contains(&self, pt: &SurfacePoint) -> bool {
        let g = self.g_value(&pt.t);
        let (p, q) = self.pq_values(&pt.x);
        &pt.y * &pt.y == &g * &p && &pt.z * &pt.z == &g * &q
    }

    /// `y^2 = g(t)`, as a binary quartic form.
    pub fn quartic_form(&self) -> BinaryQuarticForm {
        BinaryQuarticForm::from_dehomogenized(&self.g)
    }

    /// `y^2 = x^3 - 27 I x - 27 J` for the invariants of `g`.
    pub fn jacobian(&self) -> Result<ShortWeierstrassCurve> {
        let (i, j) = self.quartic_form().invariants();
        ShortWeierstrassCurve::new(rat(-27) * i, rat(-27) * j)
    }
}

/// A point of `P^1`: a rational or infinity. At infinity, `y` and `z` are
/// taken in the chart where `g`, `p`, `q` are replaced by their reversals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coord {
    Finite(Rational),
    Infinity,
}

impl Coord {
    pub fn height(&self) -> BigInt {
        match self {
            Coord::Finite(r) => height(r),
            Coord::Infinity => BigInt::one(),
        }
    }
}

impl PartialOrd for Coord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Coord {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Coord::Finite(a), Coord::Finite(b)) => a.cmp(b),
            (Coord::Finite(_), Coord::Infinity) => Ordering::Less,
            (Coord::Infinity, Coord::Finite(_)) => Ordering::Greater,
            (Coord::Infinity, Coord::Infinity) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coord::Finite(r) => f.write_str(&to_string(r)),
            Coord::Infinity => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointPlace {
    Global,
    /// A `Q_p`-point given by rational approximations.
    Local(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfacePoint {
    pub t: Coord,
    pub x: Coord,
    pub y: Rational,
    pub z: Rational,
    pub place: PointPlace,
}

impl SurfacePoint {
    pub fn global(t: Coord, x: Coord, y: Rational, z: Rational) -> Self {
        SurfacePoint { t, x, y, z, place: PointPlace::Global }
    }

    pub fn height(&self) -> BigInt {
        self.t.height().max(self.x.height())
    }

    pub fn is_boundary(&self) -> bool {
        self.y.is_zero() || self.z.is_zero()
    }

    /// Image under `(y, z) -> (-y, -z)`.
    pub fn involution(&self) -> Self {
        SurfacePoint { y: -&self.y, z: -&self.z, ..self.clone() }
    }
}

impl fmt::Display for SurfacePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(t, x, y, z) = ({}, {}, {}, {})", self.t, self.x, to_string(&self.y), to_string(&self.z))
    }
}

/// The sign of the square class of `g(t)`, with the full class kept for
/// diagnostics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistSelector {
    pub sign: i8,
    pub class: SquareClass,
}

impl TwistSelector {
    pub fn of_value(g: &Rational) -> Result<Self> {
        let class = square_class(g)?;
        Ok(TwistSelector { sign: class.sign(), class })
    }
}

/// Which twist `P` lies over. For local points `v_p(g(t))` must be even.
pub fn twist_selector(s: &SurfaceModel, pt: &SurfacePoint) -> Result<TwistSelector> {
    if pt.is_boundary() {
        return Err(Error::BoundaryPoint);
    }
    let g = s.g_value(&pt.t);
    match pt.place {
        PointPlace::Global => {
            if !s.contains(pt) {
                return invalid(format!("{pt} is not on the surface"));
            }
        }
        PointPlace::Local(p) => {
            let v = valuation(&g, &BigInt::from(p))?;
            if v.finite().is_none_or(|v| v.is_odd()) {
                return Err(Error::TheoremViolation { prime: p, detail: format!("v_p(g(t)) = {v:?} at {pt}") });
            }
        }
    }
    TwistSelector::of_value(&g)
}

/// A rational point of `C^s x D^s` mapping to the given surface point, with
/// `s = +1` for `Y = C x D` and `s = -1` for `Y^- = C^- x D^-`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistLift {
    pub sign: i8,
    /// `(t, u)` with `u^2 = s g(t)`.
    pub on_c: (Coord, Rational),
    /// `(x, v, w)` with `v^2 = s p(x)`, `w^2 = s q(x)`.
    pub on_d: (Coord, Rational, Rational),
}

impl TwistLift {
    /// `(t, x, u v, u w)`.
    pub fn image(&self) -> SurfacePoint {
        SurfacePoint::global(
            self.on_c.0.clone(),
            self.on_d.0.clone(),
            &self.on_c.1 * &self.on_d.1,
            &self.on_c.1 * &self.on_d.2,
        )
    }
}

/// Writes `g(t) = s m^2` and returns the lift to `Y` or `Y^-`.
pub fn lift_to_twist(s: &SurfaceModel, pt: &SurfacePoint) -> Result<TwistLift> {
    if pt.place != PointPlace::Global {
        return invalid("only global points lift to a twist");
    }
    let sel = twist_selector(s, pt)?;
    if !sel.class.representative().abs().is_one() {
        return Err(Error::DecompositionObstruction(sel.class.to_string()));
    }
    let sign = rat(sel.sign as i64);
    let g = s.g_value(&pt.t);
    let m = rational_root(&(&g * &sign), 2).expect("class is +-1");
    let lift = TwistLift {
        sign: sel.sign,
        on_c: (pt.t.clone(), m.clone()),
        on_d: (pt.x.clone(), &pt.y / &m, &pt.z / &m),
    };
    let (p, q) = s.pq_values(&pt.x);
    let (_, v, w) = &lift.on_d;
    debug_assert!(&m * &m == &g * &sign);
    if v * v != &p * &sign || w * w != &q * &sign || lift.image() != *pt {
        return Err(Error::DecompositionObstruction(format!("lift of {pt} does not verify")));
    }
    Ok(lift)
}

/// Sign of the monic quadratic `f` at the roots of the monic quadratic `h`
/// (`h` with real roots), as `u + v sqrt(disc h)` evaluations.
fn signs_at_roots(f: &Poly, h: &Poly) -> [i8; 2] {
    // f(r) = f(r) - h(r) is linear in r when both are monic
    let diff = f - h;
    let (c0, c1) = (diff.coeff(0), diff.coeff(1));
    let d = discriminant(h).expect("quadratic");
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let mid = -h.coeff(1) * &half;
    let u = &c0 + &c1 * &mid;
    let v = &c1 * &half;
    if d.is_zero() {
        let s = surd_sign(&u, &Rational::zero(), &Rational::one());
        return [s, s];
    }
    [surd_sign(&u, &(-&v), &d), surd_sign(&u, &v, &d)]
}

/// Whether `y^2 = -p(x), z^2 = -q(x)` has no real point, decided exactly.
/// Points at infinity need `-1` to be a square, so only finite `x` with
/// `p(x) <= 0` and `q(x) <= 0` matter.
pub fn minus_twist_real_check(s: &SurfaceModel) -> Result<bool> {
    for f in [&s.p, &s.q] {
        if f.degree() != Some(2) || !f.leading().is_one() {
            return invalid(format!("{f} is not a monic quadratic"));
        }
    }
    let (dp, dq) = (discriminant(&s.p)?, discriminant(&s.q)?);
    if dp.is_negative() || dq.is_negative() {
        return Ok(true);
    }
    // {p <= 0} and {q <= 0} are closed intervals; they meet iff an
    // endpoint of one lies in the other
    let meets = signs_at_roots(&s.q, &s.p).iter().any(|&x| x <= 0)
        || signs_at_roots(&s.p, &s.q).iter().any(|&x| x <= 0);
    Ok(!meets)
}

/// `t` (or `x`) values of height at most `h`, with infinity.
pub fn coords_up_to_height(h: u64) -> Vec<Coord> {
    let h = h as i64;
    let mut out = vec![Coord::Infinity];
    for d in 1..=h {
        for n in -h..=h {
            if n.gcd(&d) == 1 {
                out.push(Coord::Finite(Rational::new(BigInt::from(n), BigInt::from(d))));
            }
        }
    }
    out
}

fn point_key(p: &SurfacePoint) -> (BigInt, Coord, Coord) {
    (p.height(), p.t.clone(), p.x.clone())
}

/// Every point with `t` and `x` of height at most `h` (infinity included),
/// with `y, z >= 0`; boundary points `g(t) = 0` are included. Sorted by
/// height, then `t`, then `x`.
pub fn search_rational_points(s: &SurfaceModel, h: u64) -> Result<Vec<SurfacePoint>> {
    if h == 0 {
        return invalid("height bound must be at least 1");
    }
    let coords = coords_up_to_height(h);
    // x values grouped by the common square class of p(x) and q(x)
    let classes: Vec<Option<(SquareClass, Coord)>> = coords
        .par_iter()
        .map(|x| {
            let (p, q) = s.pq_values(x);
            if p.is_zero() || q.is_zero() {
                return Ok(None);
            }
            let (cp, cq) = (square_class(&p)?, square_class(&q)?);
            Ok((cp == cq).then(|| (cp, x.clone())))
        })
        .collect::<Result<_>>()?;
    let mut by_class: HashMap<SquareClass, Vec<Coord>> = HashMap::new();
    for (c, x) in classes.into_iter().flatten() {
        by_class.entry(c).or_default().push(x);
    }
    let mut points: Vec<SurfacePoint> = coords
        .par_iter()
        .map(|t| -> Result<Vec<SurfacePoint>> {
            let g = s.g_value(t);
            if g.is_zero() {
                let mut out = Vec::new();
                for x in &coords {
                    out.push(SurfacePoint::global(t.clone(), x.clone(), Rational::zero(), Rational::zero()));
                }
                return Ok(out);
            }
            let class = square_class(&g)?;
            let mut out = Vec::new();
            for x in by_class.get(&class).into_iter().flatten() {
                let (p, q) = s.pq_values(x);
                let y = rational_root(&(&g * &p), 2).expect("same square class");
                let z = rational_root(&(&g * &q), 2).expect("same square class");
                out.push(SurfacePoint::global(t.clone(), x.clone(), y.abs(), z.abs()));
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    points.sort_by_key(point_key);
    Ok(points)
}

/// Rational points of `y^2 = g(t)` with `t` of height at most `h`
/// (`t = infinity` when the leading coefficient is a square).
pub fn quartic_points_up_to_height(g: &Poly, h: u64) -> Vec<(Coord, Rational)> {
    let mut out: Vec<(Coord, Rational)> = coords_up_to_height(h)
        .into_par_iter()
        .filter_map(|t| {
            let v = match &t {
                Coord::Finite(r) => g.eval(r),
                Coord::Infinity => g.coeff(4),
            };
            rational_root(&v, 2).map(|y| (t, y))
        })
        .collect();
    out.sort_by(|a, b| a.0.height().cmp(&b.0.height()).then_with(|| a.0.cmp(&b.0)));
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Assumptions {
    /// `rank J(Q) = 0`, taken from outside the computation.
    pub rank_zero: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ItemStatus {
    Proved,
    /// Holds up to the search bound; evidence rather than proof.
    Checked,
    Assumed,
    Failed,
}

impl fmt::Display for ItemStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ItemStatus::Proved => "PROVED",
            ItemStatus::Checked => "CHECKED",
            ItemStatus::Assumed => "ASSUMED",
            ItemStatus::Failed => "FAILED",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerdictItem {
    pub id: &'static str,
    pub label: &'static str,
    pub status: ItemStatus,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conclusion {
    ConfirmedModuloAssumptions,
    NotEstablished,
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Conclusion::ConfirmedModuloAssumptions => "CONFIRMED-MODULO-ASSUMPTIONS",
            Conclusion::NotEstablished => "NOT-ESTABLISHED",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdelicVerdict {
    pub items: Vec<VerdictItem>,
    pub conclusion: Conclusion,
    pub assumptions: Vec<String>,
    /// First failing item, if any.
    pub failing: Option<&'static str>,
    pub local: Option<LocalSolubilityReport>,
    pub torsion: Option<TorsionCertificate>,
}

pub const RANK_ZERO_ASSUMPTION: &str = "rank J(Q) = 0";

/// Assembles the checkable hypotheses for `X(Q)` empty with a
/// Brauer-Manin unobstructed adelic point.
pub fn adelic_verdict(
    s: &SurfaceModel,
    fourcover: &QuadricIntersectionModel,
    assumptions: &Assumptions,
    height_bound: u64,
    limits: &SearchLimits,
) -> Result<AdelicVerdict> {
    let mut items = Vec::new();
    let mut item = |id, label, ok: bool, detail: String| {
        let status = if ok { ItemStatus::Proved } else { ItemStatus::Failed };
        items.push(VerdictItem { id, label, status, detail });
    };

    let validation = validate_surface(s);
    let failed: Vec<&str> = validation.failures().iter().map(|i| i.name).collect();
    item("0", "surface data valid", validation.is_valid(), if failed.is_empty() { "all checks pass".into() } else { failed.join(", ") });

    let monic = s.p.leading().is_one() && s.q.leading().is_one();
    item("1", "D(Q) nonempty", monic, "points at infinity (x, y, z) = (inf, 1, 1) since p, q are monic".into());

    let jac = s.jacobian()?;
    let (fi, fj) = fourcover.pencil_determinant().invariants();
    let compatible = match ShortWeierstrassCurve::new(rat(-27) * fi, rat(-27) * fj) {
        Ok(e) => e.is_isomorphic_over_q(&jac),
        Err(_) => false,
    };
    item("1b", "4-covering has the Jacobian of C", compatible, format!("Jacobian of C: {jac}"));

    let local = everywhere_locally_soluble(&GenusOneModel::Quadrics(fourcover.clone()), limits);
    let (els, local_detail, local) = match local {
        Ok(r) => {
            let overall = r.overall();
            let bad: Vec<String> = r.bad_primes.raw.iter().map(|p| p.to_string()).collect();
            (overall == Status::Soluble, format!("{overall} at R and p in {{{}}}", bad.join(", ")), Some(r))
        }
        Err(e) => (false, e.to_string(), None),
    };
    item("2", "4-covering everywhere locally soluble", els, local_detail);

    let irreducible = s.g.degree() == Some(4) && is_irreducible_deg_le_4(&s.g)?;
    item("3a", "g irreducible over Q", irreducible, format!("g = {}", s.g));

    let (minimal, _) = jac.reduced_integral_model()?;
    let torsion = minimal.torsion_certificate()?;
    item(
        "3b",
        "J(Q) torsion trivial",
        torsion.is_trivial(),
        format!("{minimal}: {:?} via {:?}", torsion.verdict, torsion.route),
    );

    let small = quartic_points_up_to_height(&s.g, height_bound);
    items.push(VerdictItem {
        id: "3c",
        label: "no point on C up to the height bound",
        status: if small.is_empty() { ItemStatus::Checked } else { ItemStatus::Failed },
        detail: match small.first() {
            None => format!("none with H(t) <= {height_bound}"),
            Some((t, y)) => format!("(t, y) = ({t}, {})", to_string(y)),
        },
    });

    items.push(VerdictItem {
        id: "3d",
        label: RANK_ZERO_ASSUMPTION,
        status: if assumptions.rank_zero { ItemStatus::Assumed } else { ItemStatus::Failed },
        detail: if assumptions.rank_zero { "external input".into() } else { "rank input withheld".into() },
    });

    let minus = minus_twist_real_check(s).unwrap_or(false);
    items.push(VerdictItem {
        id: "4",
        label: "D^- has no real point",
        status: if minus { ItemStatus::Proved } else { ItemStatus::Failed },
        detail: "p and q positive definite".into(),
    });

    let failing = items.iter().find(|i| i.status == ItemStatus::Failed).map(|i| i.id);
    let assumed: Vec<String> =
        items.iter().filter(|i| i.status == ItemStatus::Assumed).map(|i| i.label.to_string()).collect();
    Ok(AdelicVerdict {
        conclusion: if failing.is_none() { Conclusion::ConfirmedModuloAssumptions } else { Conclusion::NotEstablished },
        items,
        assumptions: assumed,
        failing,
        local,
        torsion: Some(torsion),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::frac;

    fn default_surface() -> SurfaceModel {
        SurfaceModel::new(
            Poly::from_ints(&[-729, -351, -162, 0, 3]),
            Poly::from_ints(&[1, 0, 1]),
            Poly::from_ints(&[2, 0, 1]),
        )
        .unwrap()
    }

    #[test]
    fn validation_items() {
        assert!(validate_surface(&default_surface()).is_valid());
        let g = Poly::from_ints(&[-729, -351, -162, 0, 3]);
        let bad = SurfaceModel::new_unchecked(g.clone(), Poly::from_ints(&[-1, 0, 1]), Poly::from_ints(&[2, 0, 1]));
        let r = validate_surface(&bad);
        let names: Vec<&str> = r.failures().iter().map(|i| i.name).collect();
        assert_eq!(names, vec!["resultant-unit", "p-positive"]);
        let same = SurfaceModel::new_unchecked(g, Poly::from_ints(&[1, 0, 1]), Poly::from_ints(&[1, 0, 1]));
        let names: Vec<&str> = validate_surface(&same).failures().iter().map(|i| i.name).collect();
        assert_eq!(names, vec!["resultant-unit"]);
    }

    #[test]
    fn selectors() {
        assert_eq!(TwistSelector::of_value(&rat(25)).unwrap().sign, 1);
        assert_eq!(TwistSelector::of_value(&rat(-49)).unwrap().sign, -1);
        let s = TwistSelector::of_value(&rat(18)).unwrap();
        assert_eq!((s.sign, s.class.representative().clone()), (1, BigInt::from(2)));
    }

    #[test]
    fn local_point_parity() {
        let s = default_surface();
        // g(0) = -729 = -3^6
        let pt = SurfacePoint { t: Coord::Finite(rat(0)), x: Coord::Finite(rat(0)), y: rat(1), z: rat(1), place: PointPlace::Local(3) };
        assert_eq!(twist_selector(&s, &pt).unwrap().sign, -1);
        // g(1/3) has odd 3-adic valuation
        let odd = SurfacePoint { t: Coord::Finite(frac(1, 3)), ..pt.clone() };
        let v = valuation(&s.g.eval(&frac(1, 3)), &BigInt::from(3)).unwrap();
        if v.finite().unwrap() % 2 != 0 {
            assert!(matches!(twist_selector(&s, &odd), Err(Error::TheoremViolation { prime: 3, .. })));
        }
    }

    #[test]
    fn minus_twist() {
        assert!(minus_twist_real_check(&default_surface()).unwrap());
        let g = Poly::from_ints(&[1, 0, 0, 0, 1]);
        let indefinite = SurfaceModel::new_unchecked(g.clone(), Poly::from_ints(&[-4, 0, 1]), Poly::from_ints(&[2, 0, 1]));
        assert!(minus_twist_real_check(&indefinite).unwrap());
        let both = SurfaceModel::new_unchecked(g.clone(), Poly::from_ints(&[-4, 0, 1]), Poly::from_ints(&[-1, 0, 1]));
        assert!(!minus_twist_real_check(&both).unwrap());
        // disjoint negative intervals: [-2, 2] vs [3, 5]
        let apart = SurfaceModel::new_unchecked(g, Poly::from_ints(&[-4, 0, 1]), Poly::from_ints(&[15, -8, 1]));
        assert!(minus_twist_real_check(&apart).unwrap());
    }

    #[test]
    fn heights_and_counts() {
        assert_eq!(coords_up_to_height(1).len(), 4);
        assert!(search_rational_points(&default_surface(), 0).is_err());
    }
}
