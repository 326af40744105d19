//! Gauss-Legendre quadrature for smooth integrands over polytopes.
//!
//! Used where an accurate integral with a defensible error bar is needed
//! for bounded smooth functions (trigonometric polynomials in the
//! Koksma soundness checks). Singular integrands go through the
//! truncated-log machinery in [`crate::laurent`] instead.

use crate::polytope::Polytope;
use crate::ratio::rat_to_f64;
use crate::{Error, Result};

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[0,1]`,
/// by Newton iteration on the Legendre recurrence.
pub fn gauss_legendre_unit(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for i in 0..n {
        // initial guess (Chebyshev-like)
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_and_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_and_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // map [-1,1] -> [0,1]
        nodes.push(0.5 * (1.0 - x));
        weights.push(0.5 * w);
    }
    nodes.reverse();
    weights.reverse();
    (nodes, weights)
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Integrates a smooth `f` over a full-dimensional polytope in `d = 2`
/// by exact triangulation and a tensor Gauss rule per triangle (Duffy
/// transform). Returns `(value, error_estimate)`, the error estimated by
/// comparing against a lower-order rule.
pub fn integrate_smooth_2d(
    f: &dyn Fn(&[f64]) -> f64,
    delta: &Polytope,
    order: usize,
) -> Result<(f64, f64)> {
    if delta.ambient_dim() != 2 || !delta.is_full_dimensional() {
        return Err(Error::NotFullDimensional {
            dim: delta.dim(),
            ambient: delta.ambient_dim(),
        });
    }
    let lo = integrate_2d_fixed(f, delta, (order * 2) / 3 + 1);
    let hi = integrate_2d_fixed(f, delta, order);
    Ok((hi, (hi - lo).abs() + 1e-13 * hi.abs().max(1.0)))
}

fn integrate_2d_fixed(f: &dyn Fn(&[f64]) -> f64, delta: &Polytope, order: usize) -> f64 {
    let (nodes, weights) = gauss_legendre_unit(order);
    let mut total = 0.0;
    for simplex in delta.triangulate() {
        let v: Vec<Vec<f64>> = simplex
            .iter()
            .map(|p| p.iter().map(rat_to_f64).collect())
            .collect();
        let jac = ((v[1][0] - v[0][0]) * (v[2][1] - v[0][1])
            - (v[2][0] - v[0][0]) * (v[1][1] - v[0][1]))
            .abs();
        let mut acc = 0.0;
        for (iu, &u) in nodes.iter().enumerate() {
            for (iv, &t) in nodes.iter().enumerate() {
                // Duffy: (u, t) -> (u, t (1 - u)) on the unit triangle
                let s = u;
                let r = t * (1.0 - u);
                let x = [
                    v[0][0] + s * (v[1][0] - v[0][0]) + r * (v[2][0] - v[0][0]),
                    v[0][1] + s * (v[1][1] - v[0][1]) + r * (v[2][1] - v[0][1]),
                ];
                acc += weights[iu] * weights[iv] * (1.0 - u) * f(&x);
            }
        }
        total += jac * acc;
    }
    total
}
