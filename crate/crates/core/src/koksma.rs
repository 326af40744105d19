//! Koksma-type error bounds over the hypercube and over polytopes,
//! empirical moduli of continuity, and the equidistribution error of
//! Galois orbits against polytope log-integrals.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::discrepancy::{box_discrepancy, PointSet};
use crate::laurent::{
    exact_zero_on_orbit, polytope_log_integral, LaurentPolynomial, QuadratureConfig,
    QuadratureReport,
};
use crate::polytope::Polytope;
use crate::ratio::rat_to_f64;
use crate::torus::TorsionPoint;
use crate::{Error, Result};

/// A real trigonometric polynomial `f(x) = Re sum_m c_m e(<m, x>)`,
/// carrying analytic bounds for its sup norm and Lipschitz constant.
/// Sampled moduli of continuity are only lower bounds; the analytic
/// constants are what the soundness checks must use.
#[derive(Debug, Clone)]
pub struct TrigPolynomial {
    dim: usize,
    terms: Vec<(Vec<i64>, Complex64)>,
}

impl TrigPolynomial {
    pub fn new(dim: usize, terms: Vec<(Vec<i64>, Complex64)>) -> Self {
        TrigPolynomial { dim, terms }
    }

    /// Deterministic random instance: frequencies bounded by `max_freq`
    /// in max-norm, coefficients in the unit disc.
    pub fn random(dim: usize, max_freq: i64, n_terms: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut terms = Vec::with_capacity(n_terms);
        for _ in 0..n_terms {
            let m: Vec<i64> = (0..dim)
                .map(|_| rng.random_range(-max_freq..=max_freq))
                .collect();
            let c = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            terms.push((m, c));
        }
        TrigPolynomial { dim, terms }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let phase: f64 = m.iter().zip(x).map(|(&mi, &xi)| mi as f64 * xi).sum();
            let (s, co) = (2.0 * std::f64::consts::PI * phase).sin_cos();
            acc += c.re * co - c.im * s;
        }
        acc
    }

    /// `sum |c_m| >= sup |f|`.
    pub fn sup_bound(&self) -> f64 {
        self.terms.iter().map(|(_, c)| c.norm()).sum()
    }

    /// Analytic max-norm Lipschitz constant `2 pi sum |c_m| |m|_1`.
    pub fn lipschitz_bound(&self) -> f64 {
        2.0 * std::f64::consts::PI
            * self
                .terms
                .iter()
                .map(|(m, c)| c.norm() * m.iter().map(|v| v.abs()).sum::<i64>() as f64)
                .sum::<f64>()
    }
}

/// Empirical modulus of continuity: the sampled sup of `|f(x) - f(y)|`
/// over pairs at max-norm distance at most `t`. This is a LOWER bound on
/// the true modulus; bound assembly must use analytic constants instead.
pub fn modulus_estimate(
    f: &dyn Fn(&[f64]) -> f64,
    dim: usize,
    t: f64,
    samples: usize,
    seed: u64,
) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: f64 = 0.0;
    for _ in 0..samples {
        let x: Vec<f64> = (0..dim).map(|_| rng.random_range(0.0..1.0)).collect();
        let y: Vec<f64> = x
            .iter()
            .map(|&xi| (xi + rng.random_range(-t..=t)).clamp(0.0, 1.0))
            .collect();
        best = best.max((f(&x) - f(&y)).abs());
    }
    best
}

/// The hypercube Koksma bound `(1 + 2^(d+1)) * rho(f, D^(1/(d+1)))`.
pub fn hypercube_koksma_bound(rho_at: f64, d: usize) -> f64 {
    (1.0 + 2f64.powi(d as i32 + 1)) * rho_at
}

/// Assembled right-hand side of the polytope Koksma inequality.
#[derive(Debug, Clone)]
pub struct KoksmaBoundReport {
    pub rho_term: f64,
    pub inradius_term: f64,
    pub isotropic_term: f64,
    pub shell_term: f64,
    pub total: f64,
    pub discrepancy: f64,
    pub sup_bound: f64,
    pub rho_at: f64,
    pub dim: usize,
    pub inradius: f64,
    pub facet_count: usize,
    pub diameter: f64,
    pub surface_area: f64,
}

/// The polytope Koksma bound with the shrink parameter specialized at
/// `eps = D^(1/(2d+2))`:
///
/// `(1+2^(d+1)) rho + M [ (1+2^(d+1)) D^(1/(2d+2)) / inrad
///                        + (4 d sqrt(d) + 1) D^(1/d) e(Delta)
///                        + 2 diam S D^(1/(2d+2)) / sqrt(d) ]`.
pub fn polytope_koksma_bound(
    delta: &Polytope,
    d_value: f64,
    sup_bound: f64,
    rho_at: f64,
) -> Result<KoksmaBoundReport> {
    if !(0.0..=1.0).contains(&d_value) {
        return Err(Error::BadInput(format!(
            "discrepancy must lie in [0,1], got {d_value}"
        )));
    }
    if sup_bound < 0.0 {
        return Err(Error::BadInput("sup bound must be nonnegative".into()));
    }
    let d = delta.ambient_dim();
    let (inrad, _) = delta.inradius_and_center()?;
    let inradius = rat_to_f64(&inrad);
    let diameter = rat_to_f64(&delta.diameter());
    let surface_area = delta.surface_area()?;
    let df = d as f64;
    let pow_shell = if d_value == 0.0 {
        0.0
    } else {
        d_value.powf(1.0 / (2.0 * df + 2.0))
    };
    let lead = 1.0 + 2f64.powi(d as i32 + 1);
    let rho_term = lead * rho_at;
    let inradius_term = lead * pow_shell / inradius;
    let isotropic_term =
        (4.0 * df * df.sqrt() + 1.0) * d_value.powf(1.0 / df) * delta.facet_count() as f64;
    let shell_term = 2.0 * diameter * surface_area * pow_shell / df.sqrt();
    let total = rho_term + sup_bound * (inradius_term + isotropic_term + shell_term);
    Ok(KoksmaBoundReport {
        rho_term,
        inradius_term,
        isotropic_term,
        shell_term,
        total,
        discrepancy: d_value,
        sup_bound,
        rho_at,
        dim: d,
        inradius,
        facet_count: delta.facet_count(),
        diameter,
        surface_area,
    })
}

/// Left-hand side versus integral for one Galois orbit.
#[derive(Debug, Clone)]
pub struct EquidistReport {
    pub error: f64,
    pub lhs_sum: f64,
    pub integral: f64,
    pub count_in: usize,
    pub orbit_size: usize,
    pub integral_report: Option<QuadratureReport>,
}

/// `(1/n) sum_{x_i in Delta} log|P(e(x_i))|` against
/// `int_Delta log|P(e(x))| dx`.
///
/// Preconditions enforced: no conjugate may be a zero of `P` (exact scan
/// for unit-ratio binomials, numeric floor otherwise), and no orbit
/// angle may lie exactly on the polytope boundary (reported, never
/// silently resolved).
pub fn equidist_error(
    p: &LaurentPolynomial,
    delta: &Polytope,
    omega: &TorsionPoint,
    cfg: &QuadratureConfig,
) -> Result<EquidistReport> {
    let integral_report = polytope_log_integral(p, delta, cfg)?;
    let integral = integral_report.estimate;
    let mut rep = orbit_side(p, delta, omega, integral)?;
    rep.integral_report = Some(integral_report);
    Ok(rep)
}

/// The orbit side of the comparison with a precomputed integral.
fn orbit_side(
    p: &LaurentPolynomial,
    delta: &Polytope,
    omega: &TorsionPoint,
    integral: f64,
) -> Result<EquidistReport> {
    if exact_zero_on_orbit(p, omega) {
        return Err(Error::ZeroOnOrbit);
    }
    let orbit = omega.galois_orbit();
    let n = orbit.len();
    let mut lhs = 0.0;
    let mut comp = 0.0;
    let mut count_in = 0usize;
    for conj in &orbit {
        let angles = conj.angles();
        if delta.on_boundary(angles) {
            return Err(Error::BoundaryCollision(
                angles.iter().map(crate::ratio::fmt_rat).collect(),
            ));
        }
        if !delta.contains(angles) {
            continue;
        }
        count_in += 1;
        let v = p.evaluate_at_rational_angles(angles).norm().ln();
        let y = v - comp;
        let t = lhs + y;
        comp = (t - lhs) - y;
        lhs = t;
    }
    let lhs_sum = lhs / n as f64;
    Ok(EquidistReport {
        error: (lhs_sum - integral).abs(),
        lhs_sum,
        integral,
        count_in,
        orbit_size: n,
        integral_report: None,
    })
}

/// One row of the convergence experiment table.
#[derive(Debug, Clone)]
pub struct ExperimentRow {
    pub order: u64,
    pub delta_degree: u64,
    pub orbit_size: usize,
    pub count_in_polytope: usize,
    pub lhs_sum: f64,
    pub integral: f64,
    pub error: f64,
    pub discrepancy: f64,
    pub discrepancy_exact: bool,
    pub koksma_total: f64,
    pub kappa_shape: f64,
}

/// Runs the equidistribution comparison along a strict sequence of
/// torsion points (strictness degrees must increase strictly; anything
/// else is rejected). `kappa` is the rate exponent for the shape column
/// `delta^(-kappa)`; at the exact rate constants this column is
/// indistinguishable from 1 at desk scale and is emitted for
/// completeness only.
pub fn convergence_experiment(
    p: &LaurentPolynomial,
    delta: &Polytope,
    omegas: &[TorsionPoint],
    cfg: &QuadratureConfig,
    kappa: f64,
) -> Result<Vec<ExperimentRow>> {
    let degrees: Vec<u64> = omegas.iter().map(|w| w.strictness_degree()).collect();
    for i in 1..degrees.len() {
        if degrees[i] <= degrees[i - 1] {
            return Err(Error::NotStrict(i));
        }
    }
    // the integral does not depend on omega; compute it once
    let integral = polytope_log_integral(p, delta, cfg)?.estimate;
    // rows are independent; the ordered collect keeps the table
    // deterministic regardless of thread count
    use rayon::prelude::*;
    omegas
        .par_iter()
        .zip(&degrees)
        .map(|(w, &deg)| {
            let rep = orbit_side(p, delta, w, integral)?;
            let point_set = w.orbit_angles();
            let disc = box_discrepancy(&point_set)?;
            let koksma_total = log_poly_koksma_total(p, delta, w, disc.d)?;
            Ok(ExperimentRow {
                order: w.order(),
                delta_degree: deg,
                orbit_size: rep.orbit_size,
                count_in_polytope: rep.count_in,
                lhs_sum: rep.lhs_sum,
                integral,
                error: rep.error,
                discrepancy: disc.d,
                discrepancy_exact: disc.exact,
                koksma_total,
                kappa_shape: (deg as f64).powf(-kappa),
            })
        })
        .collect()
}

/// Diagnostic Koksma total for the truncated log of `P` along an orbit:
/// `r = D^(1/(4d+4))`, sup bound from the orbit values capped by
/// `|log r|`, and the analytic modulus
/// `rho(log_r |P . e|, t) <= Lip(P . e) * t / r`.
fn log_poly_koksma_total(
    p: &LaurentPolynomial,
    delta: &Polytope,
    omega: &TorsionPoint,
    d_value: f64,
) -> Result<f64> {
    let d = delta.ambient_dim() as f64;
    let r = d_value.powf(1.0 / (4.0 * d + 4.0)).max(f64::MIN_POSITIVE);
    let lip: f64 = 2.0
        * std::f64::consts::PI
        * p.terms()
            .iter()
            .map(|(m, c)| {
                let csize = (rat_to_f64(&c.re).powi(2) + rat_to_f64(&c.im).powi(2)).sqrt();
                csize * m.iter().map(|v| v.abs()).sum::<i64>() as f64
            })
            .sum::<f64>();
    let mut sup = r.ln().abs();
    for conj in omega.galois_orbit() {
        let v = p.evaluate_at_rational_angles(conj.angles()).norm();
        sup = sup.max(v.max(r).ln().abs());
    }
    let rho_at = (lip / r) * d_value.powf(1.0 / (d + 1.0));
    Ok(polytope_koksma_bound(delta, d_value.min(1.0), sup, rho_at)?.total)
}

/// Builds the orbit of a torsion point as a `PointSet` and computes its
/// box discrepancy; convenience for experiment drivers.
pub fn orbit_discrepancy(omega: &TorsionPoint) -> Result<(PointSet, f64, bool)> {
    let ps = omega.orbit_angles();
    let rep = box_discrepancy(&ps)?;
    Ok((ps, rep.d, rep.exact))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat;

    #[test]
    fn hypercube_bound_values() {
        assert_eq!(hypercube_koksma_bound(0.0, 3), 0.0);
        assert!((hypercube_koksma_bound(1.0, 1) - 5.0).abs() < 1e-15);
        assert!((hypercube_koksma_bound(0.1, 2) - 0.9).abs() < 1e-12);
    }

    #[test]
    fn modulus_of_constant_and_linear() {
        let zero = modulus_estimate(&|_| 1.5, 2, 0.3, 2000, 1);
        assert_eq!(zero, 0.0);
        let f = |x: &[f64]| x[0];
        let m = modulus_estimate(&f, 1, 0.25, 4000, 2);
        assert!(m <= 0.25 + 1e-12);
        assert!(
            m > 0.2,
            "sampled modulus should approach the Lipschitz value"
        );
    }

    #[test]
    fn chi_modulus_respects_analytic_bound() {
        let square = Polytope::unit_box(2);
        let eps = rat(1, 2);
        let f = move |x: &[f64]| square.continuous_characteristic_f64(&eps, x).unwrap();
        for t in [0.01, 0.05] {
            let m = modulus_estimate(&f, 2, t, 3000, 3);
            assert!(m <= t / (0.5 * 0.5) + 1e-9, "t={t} m={m}");
        }
    }

    #[test]
    fn koksma_report_terms() {
        let square = Polytope::unit_box(2);
        let rep = polytope_koksma_bound(&square, 1e-4, 1.0, 0.0).unwrap();
        // independent symbolic evaluation of each term
        let pow6 = 1e-4f64.powf(1.0 / 6.0);
        assert!((rep.inradius_term - 9.0 * pow6 / 0.5).abs() < 1e-9);
        assert!((rep.isotropic_term - (8.0 * 2f64.sqrt() + 1.0) * 1e-2 * 4.0).abs() < 1e-9);
        assert!((rep.shell_term - 2.0 * 1.0 * 4.0 * pow6 / 2f64.sqrt()).abs() < 1e-6);
        assert_eq!(rep.rho_term, 0.0);
        let total = rep.rho_term
            + rep.sup_bound * (rep.inradius_term + rep.isotropic_term + rep.shell_term);
        assert!((rep.total - total).abs() < 1e-12);
        // D = 0 with a continuous f: bound collapses to zero
        let rep = polytope_koksma_bound(&square, 0.0, 1.0, 0.0).unwrap();
        assert_eq!(rep.total, 0.0);
        // M = 0 leaves only the rho term
        let rep = polytope_koksma_bound(&square, 0.5, 0.0, 0.25).unwrap();
        assert!((rep.total - rep.rho_term).abs() < 1e-15);
        assert!(polytope_koksma_bound(&square, 1.5, 1.0, 0.0).is_err());
    }

    #[test]
    fn koksma_bound_monotone() {
        let square = Polytope::unit_box(2);
        let base = polytope_koksma_bound(&square, 1e-3, 1.0, 0.1)
            .unwrap()
            .total;
        assert!(
            polytope_koksma_bound(&square, 2e-3, 1.0, 0.1)
                .unwrap()
                .total
                >= base
        );
        assert!(
            polytope_koksma_bound(&square, 1e-3, 2.0, 0.1)
                .unwrap()
                .total
                >= base
        );
        assert!(
            polytope_koksma_bound(&square, 1e-3, 1.0, 0.2)
                .unwrap()
                .total
                >= base
        );
    }

    #[test]
    fn equidist_error_fifth_roots() {
        // P = T1 - 1 over the full square at omega = (1/5, 2/5):
        // lhs = (1/4) log 5 because prod(1 - zeta_5^k) = 5
        let p = LaurentPolynomial::t_minus_one(0, 2);
        let square = Polytope::unit_box(2);
        let w = TorsionPoint::from_strs(&["1/5", "2/5"]).unwrap();
        let cfg = QuadratureConfig {
            samples: 1 << 14,
            tol: 5e-3,
            ..Default::default()
        };
        let rep = equidist_error(&p, &square, &w, &cfg).unwrap();
        assert_eq!(rep.count_in, 4);
        assert!((rep.lhs_sum - 5f64.ln() / 4.0).abs() < 1e-10);
        // integral is m(P) = 0 up to quadrature, so the error is ~ (log 5)/4
        assert!((rep.error - 5f64.ln() / 4.0).abs() < 2e-2);
    }

    #[test]
    fn equidist_rejects_zero_on_orbit() {
        let p = LaurentPolynomial::t_minus_one(0, 2);
        let square = Polytope::unit_box(2);
        let w = TorsionPoint::from_strs(&["0", "1/3"]).unwrap();
        let cfg = QuadratureConfig::default();
        assert!(matches!(
            equidist_error(&p, &square, &w, &cfg),
            Err(Error::ZeroOnOrbit)
        ));
    }

    #[test]
    fn equidist_reports_boundary_collision() {
        let p = LaurentPolynomial::t_minus_one(0, 2);
        let tri = Polytope::from_vertices(&[
            vec![rat(0, 1), rat(0, 1)],
            vec![rat(1, 1), rat(0, 1)],
            vec![rat(0, 1), rat(1, 1)],
        ])
        .unwrap();
        // (1/2, 1/2) lies on the hypotenuse
        let w = TorsionPoint::from_strs(&["1/2", "1/2"]).unwrap();
        let cfg = QuadratureConfig {
            samples: 1 << 10,
            ..Default::default()
        };
        assert!(matches!(
            equidist_error(&p, &tri, &w, &cfg),
            Err(Error::BoundaryCollision(_))
        ));
    }

    #[test]
    fn identity_orbit_single_point() {
        let p = LaurentPolynomial::new(
            2,
            vec![
                (vec![1, 0], crate::laurent::GaussianRational::from_int(1)),
                (vec![0, 0], crate::laurent::GaussianRational::from_int(2)),
            ],
        )
        .unwrap();
        // P(1,1) = 3 at the identity; lhs = log 3. The polytope must
        // contain the origin strictly (on the unit box the identity's
        // angle vector is a vertex and gets reported as a collision).
        let around_origin = Polytope::from_vertices(&[
            vec![rat(-1, 4), rat(-1, 4)],
            vec![rat(3, 4), rat(-1, 4)],
            vec![rat(-1, 4), rat(3, 4)],
            vec![rat(3, 4), rat(3, 4)],
        ])
        .unwrap();
        let id = TorsionPoint::from_strs(&["0", "0"]).unwrap();
        let cfg = QuadratureConfig {
            samples: 1 << 12,
            ..Default::default()
        };
        let rep = equidist_error(&p, &around_origin, &id, &cfg).unwrap();
        assert_eq!(rep.orbit_size, 1);
        assert!((rep.lhs_sum - 3f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn experiment_requires_strict_sequence() {
        let p = LaurentPolynomial::t_minus_one(0, 2);
        let square = Polytope::unit_box(2);
        let cfg = QuadratureConfig {
            samples: 1 << 12,
            ..Default::default()
        };
        let ws = vec![
            TorsionPoint::from_strs(&["1/5", "2/5"]).unwrap(),
            TorsionPoint::from_strs(&["1/5", "3/5"]).unwrap(),
        ];
        // both have strictness degree 2
        assert!(matches!(
            convergence_experiment(&p, &square, &ws, &cfg, 0.5),
            Err(Error::NotStrict(1))
        ));
    }

    #[test]
    fn constant_polynomial_error_bounded_by_isotropic() {
        // |log c| * |count/n - vol| <= |log c| * (4 d sqrt d + 1) D^(1/d)
        let c = LaurentPolynomial::constant(crate::laurent::GaussianRational::from_int(2), 2);
        let tri = Polytope::from_vertices(&[
            vec![rat(0, 1), rat(0, 1)],
            vec![rat(1, 1), rat(0, 1)],
            vec![rat(0, 1), rat(1, 1)],
        ])
        .unwrap();
        let w = TorsionPoint::from_strs(&["1/11", "7/11"]).unwrap();
        let cfg = QuadratureConfig {
            samples: 1 << 14,
            ..Default::default()
        };
        let rep = equidist_error(&c, &tri, &w, &cfg).unwrap();
        let (_, d_val, exact) = orbit_discrepancy(&w).unwrap();
        assert!(exact);
        let bound = 2f64.ln() * (8.0 * 2f64.sqrt() + 1.0) * d_val.sqrt();
        assert!(
            rep.error <= bound + cfg.tol,
            "error {} vs bound {}",
            rep.error,
            bound
        );
    }
}
