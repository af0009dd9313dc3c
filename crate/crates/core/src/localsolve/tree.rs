//! Residue-tree search for `p`-adic points on systems of integral
//! polynomial equations in projective-style coordinates.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Integral polynomial equations in `arity` coordinates.
pub(crate) trait System: Sync {
    fn arity(&self) -> usize;
    fn eval(&self, x: &[BigInt]) -> Vec<BigInt>;
    /// One row per equation.
    fn jacobian(&self, x: &[BigInt]) -> Vec<Vec<BigInt>>;
}

/// A patch of primitive points: `fixed` is set to 1, the `zero`
/// coordinates are divisible by `p`, and the rest are free.
#[derive(Debug, Clone)]
pub(crate) struct Chart {
    pub fixed: usize,
    pub zero: Vec<usize>,
}

impl Chart {
    /// The standard covering of `P^(n-1)`: the first unit coordinate is 1.
    pub fn projective(n: usize) -> Vec<Chart> {
        (0..n).map(|i| Chart { fixed: i, zero: (0..i).collect() }).collect()
    }

    fn free_at_level_one(&self, n: usize) -> Vec<usize> {
        (0..n).filter(|&i| i != self.fixed && !self.zero.contains(&i)).collect()
    }

    fn free(&self, n: usize) -> Vec<usize> {
        (0..n).filter(|&i| i != self.fixed).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    /// Optional cap below the proven depth bound.
    pub depth_cap: Option<u32>,
    /// Maximum number of live residue classes held at one level.
    pub node_cap: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { depth_cap: None, node_cap: 200_000 }
    }
}

/// A liftable residue class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Liftable {
    pub chart: usize,
    pub coords: Vec<BigInt>,
    pub level: u32,
    pub columns: Vec<usize>,
    pub valuation: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Outcome {
    Found(Liftable),
    Exhausted { alive_per_level: Vec<usize> },
}

fn vp(n: &BigInt, p: &BigInt) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    Some(crate::arith::integer::int_valuation(n, p))
}

fn det2(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> BigInt {
    a * d - b * c
}

/// The Jacobian minor of least valuation (ties broken by column order) and
/// that valuation. `None` if every minor vanishes.
pub(crate) fn best_minor(jac: &[Vec<BigInt>], p: &BigInt) -> Option<(Vec<usize>, u32)> {
    let n = jac[0].len();
    let mut best: Option<(Vec<usize>, u32)> = None;
    let mut consider = |cols: Vec<usize>, value: BigInt| {
        if let Some(t) = vp(&value, p) {
            if best.as_ref().is_none_or(|(_, b)| t < *b) {
                best = Some((cols, t));
            }
        }
    };
    match jac.len() {
        1 => {
            for i in 0..n {
                consider(vec![i], jac[0][i].clone());
            }
        }
        2 => {
            for i in 0..n {
                for j in i + 1..n {
                    consider(vec![i, j], det2(&jac[0][i], &jac[0][j], &jac[1][i], &jac[1][j]));
                }
            }
        }
        r => panic!("systems of {r} equations are not supported"),
    }
    best
}

/// Whether `x` (a zero mod `p^k`) passes the lifting criterion
/// `k >= 2t + 1`, returning the minor used.
pub(crate) fn lifting_criterion<S: System + ?Sized>(sys: &S, x: &[BigInt], p: &BigInt, k: u32) -> Option<(Vec<usize>, u32)> {
    let (cols, t) = best_minor(&sys.jacobian(x), p)?;
    (k > 2 * t).then_some((cols, t))
}

pub(crate) fn vanishes_mod<S: System + ?Sized>(sys: &S, x: &[BigInt], pk: &BigInt) -> bool {
    sys.eval(x).iter().all(|v| v.mod_floor(pk).is_zero())
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1u128;
    let mut b = a as u128 % p as u128;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u128;
        }
        b = b * b % p as u128;
        e >>= 1;
    }
    r as u64
}

/// All solutions of `a x = b` over `F_p`, in lexicographic order.
pub(crate) fn solve_mod_p(mut a: Vec<Vec<u64>>, mut b: Vec<u64>, p: u64) -> Vec<Vec<u64>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mulm = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, pr);
        b.swap(r, pr);
        let inv = inv_mod(a[r][c], p);
        for j in 0..cols {
            a[r][j] = mulm(a[r][j], inv);
        }
        b[r] = mulm(b[r], inv);
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..cols {
                    a[i][j] = (a[i][j] + p - mulm(f, a[r][j])) % p;
                }
                b[i] = (b[i] + p - mulm(f, b[r])) % p;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if (r..rows).any(|i| b[i] != 0) {
        return Vec::new();
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let total = (p as u128).pow(free.len() as u32);
    let mut out = Vec::with_capacity(total.min(1 << 20) as usize);
    let mut assignment = vec![0u64; free.len()];
    loop {
        let mut x = vec![0u64; cols];
        for (f, &v) in free.iter().zip(&assignment) {
            x[*f] = v;
        }
        for (row, &pc) in pivots.iter().enumerate() {
            let mut v = b[row];
            for &f in &free {
                v = (v + p - mulm(a[row][f], x[f])) % p;
            }
            x[pc] = v;
        }
        out.push(x);
        // odometer over the free variables, last one fastest
        let mut i = free.len();
        loop {
            if i == 0 {
                out.sort();
                return out;
            }
            i -= 1;
            assignment[i] += 1;
            if assignment[i] < p {
                break;
            }
            assignment[i] = 0;
        }
    }
}

/// Order used to pick the canonical witness among liftable classes:
/// lexicographic on the normalized coordinates.
fn node_order(a: &Liftable, b: &Liftable) -> Ordering {
    a.coords.cmp(&b.coords).then_with(|| a.chart.cmp(&b.chart))
}

fn limit_error(p: u64, detail: String) -> Error {
    Error::ResourceLimit { prime: p, detail }
}

struct Search<'a, S: System + ?Sized> {
    sys: &'a S,
    charts: &'a [Chart],
    p: u64,
    pb: BigInt,
    limit: u32,
    node_cap: usize,
}

impl<'a, S: System + ?Sized> Search<'a, S> {
    /// Children of `x mod p^k` modulo `p^(k+1)`: `x + p^k d` with `d`
    /// solving the linearized equations mod `p`.
    fn children(&self, chart: usize, x: &[BigInt], k: u32) -> Vec<Vec<BigInt>> {
        let n = self.sys.arity();
        let free = self.charts[chart].free(n);
        let pk = num_traits::pow(self.pb.clone(), k as usize);
        let vals = self.sys.eval(x);
        let jac = self.sys.jacobian(x);
        let to_u = |v: &BigInt| v.mod_floor(&self.pb).to_u64().expect("residue fits");
        let a: Vec<Vec<u64>> = jac.iter().map(|row| free.iter().map(|&j| to_u(&row[j])).collect()).collect();
        let b: Vec<u64> = vals.iter().map(|v| (self.p - to_u(&(v / &pk))) % self.p).collect();
        solve_mod_p(a, b, self.p)
            .into_iter()
            .map(|d| {
                let mut y = x.to_vec();
                for (&j, dj) in free.iter().zip(d) {
                    y[j] += &pk * BigInt::from(dj);
                }
                y
            })
            .collect()
    }

    fn level_one(&self) -> Result<(Option<Liftable>, Vec<(usize, Vec<BigInt>)>)> {
        let n = self.sys.arity();
        let mut alive = Vec::new();
        let mut best: Option<Liftable> = None;
        for (ci, chart) in self.charts.iter().enumerate() {
            let free = chart.free_at_level_one(n);
            let mut digits = vec![0u64; free.len()];
            loop {
                let mut x = vec![BigInt::zero(); n];
                x[chart.fixed] = BigInt::one();
                for (&j, &d) in free.iter().zip(&digits) {
                    x[j] = BigInt::from(d);
                }
                if vanishes_mod(self.sys, &x, &self.pb) {
                    if let Some((columns, valuation)) = lifting_criterion(self.sys, &x, &self.pb, 1) {
                        let found = Liftable { chart: ci, coords: x, level: 1, columns, valuation };
                        if best.as_ref().is_none_or(|b| node_order(&found, b) == Ordering::Less) {
                            best = Some(found);
                        }
                    } else if best.is_none() {
                        alive.push((ci, x));
                    }
                    if alive.len() > self.node_cap {
                        return Err(limit_error(self.p, format!("more than {} live classes mod p", self.node_cap)));
                    }
                }
                let mut i = free.len();
                loop {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                    digits[i] += 1;
                    if digits[i] < self.p {
                        break;
                    }
                    digits[i] = 0;
                }
                if digits.iter().all(|&d| d == 0) {
                    break;
                }
            }
        }
        if best.is_some() {
            alive.clear();
        }
        Ok((best, alive))
    }

    /// Breadth-first from the given live classes at level `k`.
    fn descend(&self, mut alive: Vec<(usize, Vec<BigInt>)>, mut k: u32, mut counts: Vec<usize>) -> Result<Outcome> {
        loop {
            if alive.is_empty() {
                return Ok(Outcome::Exhausted { alive_per_level: counts });
            }
            if k >= self.limit {
                let (_, deepest) = &alive[0];
                let shown: Vec<String> = deepest.iter().map(|c| c.to_string()).collect();
                return Err(limit_error(
                    self.p,
                    format!(
                        "depth {} reached with {} live classes, e.g. ({}) mod p^{k}",
                        self.limit,
                        alive.len(),
                        shown.join(",")
                    ),
                ));
            }
            let next: Vec<(usize, Vec<BigInt>)> = alive
                .par_iter()
                .flat_map_iter(|(ci, x)| self.children(*ci, x, k).into_iter().map(move |y| (*ci, y)))
                .collect();
            k += 1;
            if next.len() > self.node_cap {
                return Err(limit_error(
                    self.p,
                    format!("{} live classes mod p^{k} exceed the cap {}", next.len(), self.node_cap),
                ));
            }
            let found = next
                .par_iter()
                .filter_map(|(ci, x)| {
                    lifting_criterion(self.sys, x, &self.pb, k).map(|(columns, valuation)| Liftable {
                        chart: *ci,
                        coords: x.clone(),
                        level: k,
                        columns,
                        valuation,
                    })
                })
                .min_by(node_order);
            if let Some(f) = found {
                return Ok(Outcome::Found(f));
            }
            counts.push(next.len());
            alive = next;
        }
    }
}

/// Searches all charts from level 1 up to `depth` (inclusive).
pub(crate) fn search<S: System + ?Sized>(
    sys: &S,
    charts: &[Chart],
    p: u64,
    depth: u32,
    limits: &SearchLimits,
) -> Result<Outcome> {
    let s = Search { sys, charts, p, pb: BigInt::from(p), limit: depth, node_cap: limits.node_cap };
    let (found, alive) = s.level_one()?;
    if let Some(f) = found {
        return Ok(Outcome::Found(f));
    }
    let counts = vec![alive.len()];
    s.descend(alive, 1, counts)
}

/// Searches the subtree below a single live class `x mod p^k`.
pub(crate) fn search_below<S: System + ?Sized>(
    sys: &S,
    chart: &Chart,
    x: Vec<BigInt>,
    p: u64,
    k: u32,
    depth: u32,
    limits: &SearchLimits,
) -> Result<Outcome> {
    let charts = [chart.clone()];
    let s = Search { sys, charts: &charts, p, pb: BigInt::from(p), limit: depth, node_cap: limits.node_cap };
    if let Some((columns, valuation)) = lifting_criterion(sys, &x, &s.pb, k) {
        return Ok(Outcome::Found(Liftable { chart: 0, coords: x, level: k, columns, valuation }));
    }
    s.descend(vec![(0, x)], k, vec![1])
}
