//! Exact rational linear programming.
//!
//! Dense two-phase simplex with Bland's rule, so termination is
//! guaranteed and every pivot is exact. Problems here are tiny (a
//! handful of variables, tens of constraints): inradius computation,
//! interior-disjointness certificates and similar geometric queries.

#![allow(clippy::needless_range_loop)]

use num_traits::{One, Signed, Zero};

use crate::ratio::Rat;

/// Outcome of `maximize`.
#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rat>, value: Rat },
    Infeasible,
    Unbounded,
}

/// Maximizes `c . x` subject to `a x <= b` with `x` free.
///
/// Free variables are split internally as differences of nonnegative
/// ones, so callers can pass geometric coordinates directly.
pub fn maximize(c: &[Rat], a: &[Vec<Rat>], b: &[Rat]) -> LpOutcome {
    let n = c.len();
    // split x = x+ - x-
    let obj: Vec<Rat> = c.iter().cloned().chain(c.iter().map(|v| -v)).collect();
    let rows: Vec<Vec<Rat>> = a
        .iter()
        .map(|row| {
            debug_assert_eq!(row.len(), n);
            row.iter().cloned().chain(row.iter().map(|v| -v)).collect()
        })
        .collect();
    match maximize_nonneg(&obj, &rows, b) {
        LpOutcome::Optimal { x, value } => {
            let merged = (0..n).map(|i| &x[i] - &x[n + i]).collect();
            LpOutcome::Optimal { x: merged, value }
        }
        other => other,
    }
}

/// Maximizes `c . x` subject to `a x <= b`, `x >= 0`.
pub fn maximize_nonneg(c: &[Rat], a: &[Vec<Rat>], b: &[Rat]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    // tableau columns: n structural, m slack, then (phase 1) artificials
    let mut need_artificial = Vec::new();
    for (i, bi) in b.iter().enumerate() {
        if bi.is_negative() {
            need_artificial.push(i);
        }
    }
    let num_art = need_artificial.len();
    let cols = n + m + num_art;
    let mut t: Vec<Vec<Rat>> = Vec::with_capacity(m);
    let mut basis: Vec<usize> = Vec::with_capacity(m);
    let mut art_col_of_row = vec![usize::MAX; m];
    for (k, &i) in need_artificial.iter().enumerate() {
        art_col_of_row[i] = n + m + k;
    }
    for i in 0..m {
        let mut row: Vec<Rat> = Vec::with_capacity(cols + 1);
        row.extend(a[i].iter().cloned());
        for j in 0..m {
            row.push(if j == i { Rat::one() } else { Rat::zero() });
        }
        for _ in 0..num_art {
            row.push(Rat::zero());
        }
        row.push(b[i].clone());
        if art_col_of_row[i] != usize::MAX {
            // negate so the rhs is nonnegative, then add the artificial
            for v in row.iter_mut() {
                *v = -v.clone();
            }
            row[art_col_of_row[i]] = Rat::one();
            basis.push(art_col_of_row[i]);
        } else {
            basis.push(n + i);
        }
        t.push(row);
    }

    if num_art > 0 {
        // phase 1: minimize sum of artificials == maximize -(sum)
        let mut obj = vec![Rat::zero(); cols];
        for k in 0..num_art {
            obj[n + m + k] = -Rat::one();
        }
        let value = run_simplex(&mut t, &mut basis, &obj, cols);
        match value {
            Some(v) if v.is_zero() => {}
            Some(_) => return LpOutcome::Infeasible,
            None => unreachable!("phase-1 objective is bounded"),
        }
        // drive any artificial still in the basis out, or drop its row
        for i in 0..m {
            if basis[i] >= n + m {
                if let Some(j) = (0..n + m).find(|&j| !t[i][j].is_zero()) {
                    pivot(&mut t, &mut basis, i, j, cols);
                } // else the row is all zeros in structural columns: redundant
            }
        }
    }

    // phase 2 on structural + slack columns only (artificials frozen at 0)
    let mut obj = vec![Rat::zero(); cols];
    obj[..n].clone_from_slice(c);
    match run_simplex_restricted(&mut t, &mut basis, &obj, n + m, cols) {
        Some(value) => {
            let mut x = vec![Rat::zero(); n];
            for (i, &bj) in basis.iter().enumerate() {
                if bj < n {
                    x[bj] = t[i][cols].clone();
                }
            }
            LpOutcome::Optimal { x, value }
        }
        None => LpOutcome::Unbounded,
    }
}

fn pivot(t: &mut [Vec<Rat>], basis: &mut [usize], row: usize, col: usize, cols: usize) {
    let inv = t[row][col].recip();
    for j in 0..=cols {
        let v = &t[row][j] * &inv;
        t[row][j] = v;
    }
    for i in 0..t.len() {
        if i != row && !t[i][col].is_zero() {
            let f = t[i][col].clone();
            for j in 0..=cols {
                let v = &t[i][j] - &f * &t[row][j];
                t[i][j] = v;
            }
        }
    }
    basis[row] = col;
}

fn run_simplex(t: &mut [Vec<Rat>], basis: &mut [usize], obj: &[Rat], cols: usize) -> Option<Rat> {
    run_simplex_restricted(t, basis, obj, cols, cols)
}

/// Simplex iterations with Bland's rule, allowing entering columns only
/// below `enter_limit`. Returns the optimal objective value, or `None`
/// when unbounded.
fn run_simplex_restricted(
    t: &mut [Vec<Rat>],
    basis: &mut [usize],
    obj: &[Rat],
    enter_limit: usize,
    cols: usize,
) -> Option<Rat> {
    loop {
        // reduced costs: z_j - c_j for each nonbasic column
        let mut entering = None;
        'cols: for j in 0..enter_limit {
            if basis.contains(&j) {
                continue;
            }
            let mut red = -obj[j].clone();
            for (i, &bj) in basis.iter().enumerate() {
                if !obj[bj].is_zero() && !t[i][j].is_zero() {
                    red += &obj[bj] * &t[i][j];
                }
            }
            if red.is_negative() {
                entering = Some(j);
                break 'cols; // Bland: first improving index
            }
        }
        let Some(j) = entering else {
            let mut value = Rat::zero();
            for (i, &bj) in basis.iter().enumerate() {
                if !obj[bj].is_zero() {
                    value += &obj[bj] * &t[i][cols];
                }
            }
            return Some(value);
        };
        // ratio test with Bland tie-break on the leaving basis index
        let mut leave: Option<(usize, Rat)> = None;
        for i in 0..t.len() {
            if t[i][j].is_positive() {
                let ratio = &t[i][cols] / &t[i][j];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (row, _) = leave?;
        pivot(t, basis, row, j, cols);
    }
}
