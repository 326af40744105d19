//! Dense exact linear algebra over the rationals, plus the integer-matrix
//! helpers used by the unimodular-completion routines.
//!
//! Everything here is small and dense; the crate targets ambient
//! dimension at most 4 and desk-scale systems, so plain Gaussian
//! elimination with exact rationals is the right tool.

#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::ratio::Rat;

pub type RatVec = Vec<Rat>;
pub type RatMat = Vec<Vec<Rat>>;

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn sub(a: &[Rat], b: &[Rat]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[Rat], b: &[Rat]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[Rat], s: &Rat) -> RatVec {
    a.iter().map(|x| x * s).collect()
}

/// Max-norm of a rational vector.
pub fn max_norm(a: &[Rat]) -> Rat {
    a.iter().map(|x| x.abs()).max().unwrap_or_else(Rat::zero)
}

/// Row echelon reduction in place, pivoting only in the first
/// `pivot_cols` columns; returns the rank.
fn echelon(m: &mut RatMat, pivot_cols: usize) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for col in 0..pivot_cols.min(cols) {
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][col].recip();
        for c in col..cols {
            let v = &m[rank][c] * &inv;
            m[rank][c] = v;
        }
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..cols {
                    let v = &m[r][c] - &f * &m[rank][c];
                    m[r][c] = v;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

pub fn rank(m: &RatMat) -> usize {
    let mut work = m.clone();
    let cols = work.first().map_or(0, Vec::len);
    echelon(&mut work, cols)
}

/// Determinant of a square rational matrix.
pub fn det(m: &RatMat) -> Rat {
    let n = m.len();
    let mut a = m.clone();
    let mut d = Rat::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rat::zero();
        };
        if p != col {
            a.swap(col, p);
            d = -d;
        }
        d *= &a[col][col];
        let inv = a[col][col].recip();
        for r in col + 1..n {
            if !a[r][col].is_zero() {
                let f = &a[r][col] * &inv;
                for c in col..n {
                    let v = &a[r][c] - &f * &a[col][c];
                    a[r][c] = v;
                }
            }
        }
    }
    d
}

/// Solves the square system `m x = b` when `m` is invertible.
pub fn solve(m: &RatMat, b: &[Rat]) -> Option<RatVec> {
    let n = m.len();
    let mut a: RatMat = m
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    if echelon(&mut a, n) < n {
        return None;
    }
    Some((0..n).map(|i| a[i][n].clone()).collect())
}

/// Solves a consistent (possibly overdetermined) system `m x = b` with
/// `m` of full column rank; returns `None` when inconsistent.
pub fn solve_overdetermined(m: &RatMat, b: &[Rat]) -> Option<RatVec> {
    let cols = m.first().map_or(0, Vec::len);
    let mut a: RatMat = m
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    echelon(&mut a, cols);
    let mut x = vec![Rat::zero(); cols];
    for row in &a {
        let Some(lead) = (0..cols).find(|&c| !row[c].is_zero()) else {
            if !row[cols].is_zero() {
                return None; // 0 = nonzero
            }
            continue;
        };
        // echelon rows are normalized with leading 1 and zeros elsewhere
        x[lead] = row[cols].clone();
    }
    // verify (guards the full-column-rank assumption)
    for (row, rhs) in m.iter().zip(b) {
        if dot(row, &x) != *rhs {
            return None;
        }
    }
    Some(x)
}

/// A rational basis of the null space `{x : m x = 0}` (rows of the result).
pub fn null_space(m: &RatMat) -> RatMat {
    let cols = m.first().map_or(0, Vec::len);
    let mut a = m.clone();
    echelon(&mut a, cols);
    let mut lead_of_col = vec![None; cols];
    for (r, row) in a.iter().enumerate() {
        if let Some(c) = (0..cols).find(|&c| !row[c].is_zero()) {
            lead_of_col[c] = Some(r);
        }
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if lead_of_col[free].is_some() {
            continue;
        }
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for c in 0..cols {
            if let Some(r) = lead_of_col[c] {
                v[c] = -a[r][free].clone();
            }
        }
        basis.push(v);
    }
    basis
}

/// Normal vector of the hyperplane spanned by `d-1` difference vectors in
/// ambient dimension `d` (generalized cross product by cofactor
/// expansion). Returns `None` when the differences are dependent.
pub fn hyperplane_normal(diffs: &RatMat, d: usize) -> Option<RatVec> {
    debug_assert_eq!(diffs.len() + 1, d);
    let mut normal = Vec::with_capacity(d);
    for i in 0..d {
        let minor: RatMat = diffs
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let sign = if i % 2 == 0 { Rat::one() } else { -Rat::one() };
        normal.push(sign * det(&minor));
    }
    if normal.iter().all(Rat::is_zero) {
        None
    } else {
        Some(normal)
    }
}

/// Scales a nonzero rational vector to a primitive integer vector with the
/// same direction (gcd of entries 1, sign preserved).
pub fn primitive_integer_vector(v: &[Rat]) -> Vec<BigInt> {
    let mut den_lcm = BigInt::one();
    for x in v {
        den_lcm = den_lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| x.numer() * (&den_lcm / x.denom()))
        .collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

// ---------------------------------------------------------------------------
// Integer matrices (for the appendix-lemma routines)
// ---------------------------------------------------------------------------

pub type IMat = Vec<Vec<BigInt>>;

pub fn imat_det(m: &IMat) -> BigInt {
    let rat: RatMat = m
        .iter()
        .map(|row| row.iter().map(|x| Rat::from_integer(x.clone())).collect())
        .collect();
    let d = det(&rat);
    debug_assert!(d.is_integer());
    d.to_integer()
}

pub fn imat_max_norm(m: &IMat) -> BigInt {
    m.iter()
        .flat_map(|row| row.iter().map(|x| x.abs()))
        .max()
        .unwrap_or_else(BigInt::zero)
}

/// Exact inverse of a unimodular integer matrix (integer entries since
/// `det = ±1`). Returns `None` when the matrix is not unimodular.
pub fn unimodular_inverse(m: &IMat) -> Option<IMat> {
    let d = imat_det(m);
    if d.abs() != BigInt::one() {
        return None;
    }
    let n = m.len();
    let rat: RatMat = m
        .iter()
        .map(|row| row.iter().map(|x| Rat::from_integer(x.clone())).collect())
        .collect();
    let mut inv = Vec::with_capacity(n);
    for i in 0..n {
        let mut e = vec![Rat::zero(); n];
        e[i] = Rat::one();
        let col = solve(&rat, &e)?;
        inv.push(col);
    }
    // `inv` currently holds columns of m^-1 as rows; transpose and cast
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for (i, col) in inv.iter().enumerate() {
        for (j, v) in col.iter().enumerate() {
            debug_assert!(v.is_integer());
            out[j][i] = v.to_integer();
        }
    }
    Some(out)
}

pub fn imat_mul(a: &IMat, b: &IMat) -> IMat {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    let mut out = vec![vec![BigInt::zero(); m]; n];
    for i in 0..n {
        for j in 0..m {
            let mut s = BigInt::zero();
            for t in 0..k {
                s += &a[i][t] * &b[t][j];
            }
            out[i][j] = s;
        }
    }
    out
}

pub fn identity_imat(n: usize) -> IMat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat;

    fn m(rows: &[&[i64]]) -> RatMat {
        rows.iter()
            .map(|r| r.iter().map(|&x| rat(x, 1)).collect())
            .collect()
    }

    #[test]
    fn det_and_rank() {
        assert_eq!(det(&m(&[&[2, 1], &[3, 2]])), rat(1, 1));
        assert_eq!(det(&m(&[&[1, 2], &[2, 4]])), rat(0, 1));
        assert_eq!(rank(&m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&m(&[&[1, 0, 0], &[0, 0, 1]])), 2);
    }

    #[test]
    fn solve_square() {
        let x = solve(&m(&[&[2, 1], &[1, 1]]), &[rat(3, 1), rat(2, 1)]).unwrap();
        assert_eq!(x, vec![rat(1, 1), rat(1, 1)]);
        assert!(solve(&m(&[&[1, 1], &[1, 1]]), &[rat(1, 1), rat(2, 1)]).is_none());
    }

    #[test]
    fn null_space_of_line() {
        let ns = null_space(&m(&[&[1, -1]]));
        assert_eq!(ns.len(), 1);
        // the basis vector is orthogonal to (1,-1)
        assert_eq!(dot(&ns[0], &[rat(1, 1), rat(-1, 1)]), rat(0, 1));
    }

    #[test]
    fn cross_product_normal() {
        // plane through origin spanned by (1,0,0) and (0,1,0) -> normal z
        let n = hyperplane_normal(&m(&[&[1, 0, 0], &[0, 1, 0]]), 3).unwrap();
        assert_eq!(n[0], rat(0, 1));
        assert_eq!(n[1], rat(0, 1));
        assert!(!n[2].is_zero());
        assert!(hyperplane_normal(&m(&[&[1, 1, 0], &[2, 2, 0]]), 3).is_none());
        // ambient dimension 1: the empty cofactor expansion gives (1)
        assert_eq!(hyperplane_normal(&m(&[]), 1).unwrap(), vec![rat(1, 1)]);
    }

    #[test]
    fn primitive_vector() {
        let v = primitive_integer_vector(&[rat(2, 3), rat(-4, 3)]);
        assert_eq!(v, vec![BigInt::from(1), BigInt::from(-2)]);
    }

    #[test]
    fn unimodular_inverse_2x2() {
        let a: IMat = vec![
            vec![BigInt::from(2), BigInt::from(1)],
            vec![BigInt::from(3), BigInt::from(2)],
        ];
        let inv = unimodular_inverse(&a).unwrap();
        assert_eq!(imat_mul(&a, &inv), identity_imat(2));
        assert_eq!(imat_max_norm(&inv), BigInt::from(3));
    }
}
