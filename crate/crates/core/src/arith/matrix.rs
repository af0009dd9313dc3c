//! Small dense exact matrices over Q and over Q[x].

use num_traits::{One, Zero};

use super::poly::Poly;
use super::rational::Rational;

pub type Matrix = Vec<Vec<Rational>>;

/// Determinant by Gaussian elimination; the empty matrix has determinant 1.
pub fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a: Matrix = m.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &p;
            for c in col..n {
                let sub = &factor * &a[col][c];
                a[r][c] -= sub;
            }
        }
    }
    det
}

/// Row-echelon rank of a (not necessarily square) matrix.
pub fn rank(m: &[Vec<Rational>]) -> usize {
    let mut a: Matrix = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(piv, r);
        let p = a[r][c].clone();
        for i in r + 1..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let factor = &a[i][c] / &p;
            for j in c..cols {
                let sub = &factor * &a[r][j];
                a[i][j] -= sub;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Solves `x * rows = target` for the coefficient vector `x`, where `rows`
/// are linearly independent vectors; `None` when `target` is not in the span.
pub fn express_in_span(rows: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let k = rows.len();
    let n = target.len();
    // augmented system: columns are the spanning vectors
    let mut a: Matrix = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> = rows.iter().map(|v| v[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let piv = (r..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(piv, r);
        let p = a[r][c].clone();
        for j in c..=k {
            a[r][j] = &a[r][j] / &p;
        }
        for i in 0..n {
            if i != r && !a[i][c].is_zero() {
                let factor = a[i][c].clone();
                for j in c..=k {
                    let sub = &factor * &a[r][j];
                    a[i][j] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if (r..n).any(|i| !a[i][k].is_zero()) {
        return None;
    }
    Some((0..k).map(|i| a[i][k].clone()).collect())
}

/// Leibniz expansion of a determinant with polynomial entries.
pub fn poly_determinant(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = Poly::zero();
    permute(&mut perm, 0, &mut |p| {
        let mut term = Poly::constant(Rational::one());
        for (i, &j) in p.iter().enumerate() {
            term = &term * &m[i][j];
            if term.is_zero() {
                return;
            }
        }
        if parity(p) {
            term = -&term;
        }
        total = &total + &term;
    });
    total
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

/// True for odd permutations.
fn parity(p: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}

/// `det(x I - m)`.
pub fn characteristic_polynomial(m: &[Vec<Rational>]) -> Poly {
    let n = m.len();
    let entries: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = -m[i][j].clone();
                    if i == j {
                        Poly::new(vec![c, Rational::one()])
                    } else {
                        Poly::constant(c)
                    }
                })
                .collect()
        })
        .collect();
    poly_determinant(&entries)
}

/// Number of positive eigenvalues of a symmetric matrix, counted with
/// multiplicity. All eigenvalues are real, so Descartes' rule is exact.
pub fn positive_eigenvalue_count(m: &[Vec<Rational>]) -> usize {
    let chi = characteristic_polynomial(m);
    let signs = chi.coeffs().iter().filter(|c| !c.is_zero()).map(|c| c > &Rational::zero());
    let mut count = 0;
    let mut last: Option<bool> = None;
    for s in signs {
        if let Some(l) = last {
            if l != s {
                count += 1;
            }
        }
        last = Some(s);
    }
    count
}

/// Whether the symmetric matrix is positive or negative definite.
pub fn is_definite(m: &[Vec<Rational>]) -> bool {
    let n = m.len();
    if determinant(m).is_zero() {
        return false;
    }
    let pos = positive_eigenvalue_count(m);
    pos == n || pos == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn det_and_rank() {
        assert_eq!(determinant(&m(&[&[2, 1], &[1, 3]])), rat(5));
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])), rat(-1));
        assert_eq!(rank(&m(&[&[1, 2, 3], &[2, 4, 6]])), 1);
        assert_eq!(rank(&m(&[&[1, 2, 3], &[2, 4, 7]])), 2);
    }

    #[test]
    fn poly_det_matches_numeric() {
        let a = m(&[&[1, 2, 0], &[2, -1, 3], &[0, 3, 4]]);
        let chi = characteristic_polynomial(&a);
        for x in -3..4 {
            let shifted: Matrix = (0..3)
                .map(|i| (0..3).map(|j| if i == j { rat(x) - &a[i][j] } else { -a[i][j].clone() }).collect())
                .collect();
            assert_eq!(chi.eval(&rat(x)), determinant(&shifted));
        }
    }

    #[test]
    fn definiteness() {
        assert!(is_definite(&m(&[&[2, 1], &[1, 2]])));
        assert!(is_definite(&m(&[&[-2, 1], &[1, -2]])));
        assert!(!is_definite(&m(&[&[1, 2], &[2, 1]])));
        assert_eq!(positive_eigenvalue_count(&m(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, 3]])), 2);
    }

    #[test]
    fn span() {
        let rows = vec![vec![rat(1), rat(0), rat(1)], vec![rat(0), rat(1), rat(1)]];
        assert_eq!(express_in_span(&rows, &[rat(2), rat(3), rat(5)]), Some(vec![rat(2), rat(3)]));
        assert_eq!(express_in_span(&rows, &[rat(2), rat(3), rat(4)]), None);
    }
}
