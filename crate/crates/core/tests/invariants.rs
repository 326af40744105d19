//! Cross-module invariants: exact identities on random geometry, orbit
//! properties, quadrature consistency and the experiment trends, plus
//! proptest coverage where random structure fits.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use equid_core::constants::{
    complete_primitive, gamma_c, inverse_norm_check, verify_epsilon_constraints,
};
use equid_core::discrepancy::{box_discrepancy, oracle, PointSet};
use equid_core::koksma::convergence_experiment;
use equid_core::laurent::{polytope_log_integral, LaurentPolynomial, QuadratureConfig};
use equid_core::linalg::imat_det;
use equid_core::polytope::Polytope;
use equid_core::ratio::{rat, rat_to_f64, Rat};
use equid_core::torus::{euler_phi, TorsionPoint};

fn random_polytope(rng: &mut ChaCha8Rng, d: usize, denom: i64) -> Option<Polytope> {
    let n_pts = rng.random_range(d + 1..=d + 5);
    let pts: Vec<Vec<Rat>> = (0..n_pts)
        .map(|_| {
            (0..d)
                .map(|_| rat(rng.random_range(0..=denom), denom))
                .collect()
        })
        .collect();
    Polytope::from_vertices(&pts)
        .ok()
        .filter(|p| p.is_full_dimensional())
}

/// vol(Delta) = vol(Delta_eps) + sum of the shell pieces, exactly, and
/// the Hausdorff vertex form |v - phi(v)| = eps |v - x_c| <= eps diam.
#[test]
fn shrink_shell_exactness_and_hausdorff() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut done = 0;
    while done < 12 {
        let d = if done % 3 == 2 { 3 } else { 2 };
        let Some(p) = random_polytope(&mut rng, d, 12) else {
            continue;
        };
        let diam = p.diameter();
        for eps in [rat(1, 2), rat(1, 4), rat(1, 10)] {
            let s = p.shrink(&eps).unwrap();
            let pieces: Rat = s.shell_pieces.iter().map(|q| q.volume()).sum();
            assert_eq!(p.volume() - s.inner.volume(), pieces);
            for (v, w) in p.vertices().iter().zip(s.inner.vertices()) {
                let moved = equid_core::linalg::max_norm(&equid_core::linalg::sub(v, w));
                let radial = equid_core::linalg::max_norm(&equid_core::linalg::sub(v, &s.center));
                assert_eq!(moved, &eps * radial.clone());
                assert!(moved <= &eps * &diam);
            }
        }
        done += 1;
    }
}

/// The inscribed cube certificate: all corners inside, and the radius is
/// tight (some constraint is active, so any eta > 0 breaks a corner).
#[test]
fn inradius_certificate() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    let mut done = 0;
    while done < 10 {
        let Some(p) = random_polytope(&mut rng, 2, 16) else {
            continue;
        };
        let (r, c) = p.inradius_and_center().unwrap();
        for mask in 0..4u32 {
            let corner: Vec<Rat> = (0..2)
                .map(|i| {
                    if mask >> i & 1 == 1 {
                        &c[i] + &r
                    } else {
                        &c[i] - &r
                    }
                })
                .collect();
            assert!(p.contains(&corner));
        }
        // max slack over facets is exactly zero at the optimum
        let slack = p
            .facets()
            .iter()
            .map(|f| &f.halfspace.offset - f.halfspace.eval(&c) - &r * f.halfspace.normal_l1())
            .min()
            .unwrap();
        assert!(slack.is_zero());
        done += 1;
    }
}

/// Orbit size equals the totient; delta is orbit-invariant; the witness
/// shell is minimal (no qualifying vector strictly below it).
#[test]
fn orbit_and_witness_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for _ in 0..40 {
        let den = rng.random_range(2i64..=60);
        let u = rng.random_range(0..den);
        let v = rng.random_range(0..den);
        let w = TorsionPoint::new(&[rat(u, den), rat(v, den)]).unwrap();
        let orbit = w.galois_orbit();
        assert_eq!(orbit.len() as u64, euler_phi(w.order()));
        let (delta, witness) = w.strictness_degree_with_witness();
        assert!(w.subgroup_member(&witness));
        assert!(delta <= w.order());
        // exhaustive replay strictly below the witness shell
        let n = w.order() as i64;
        let res = w.residues();
        for a1 in -(delta as i64 - 1)..=(delta as i64 - 1) {
            for a2 in -(delta as i64 - 1)..=(delta as i64 - 1) {
                if a1 == 0 && a2 == 0 {
                    continue;
                }
                let acc = a1 * res[0] as i64 + a2 * res[1] as i64;
                assert!(acc.rem_euclid(n) != 0, "shorter witness ({a1},{a2})");
            }
        }
        for conj in &orbit {
            assert_eq!(conj.strictness_degree(), delta);
        }
    }
}

/// D of the golden-orbit family decreases along a strict sequence, and
/// the experiment's lhs columns match the frozen oracle values.
#[test]
fn experiment_trend_and_frozen_rows() {
    let p = LaurentPolynomial::t_minus_one(0, 2);
    let tri = Polytope::from_vertices(&[
        vec![rat(0, 1), rat(0, 1)],
        vec![rat(1, 1), rat(0, 1)],
        vec![rat(0, 1), rat(1, 1)],
    ])
    .unwrap();
    let omegas: Vec<TorsionPoint> = [(11i64, 7i64), (31, 19), (101, 62), (311, 192)]
        .iter()
        .map(|&(pp, a)| TorsionPoint::new(&[rat(1, pp), rat(a, pp)]).unwrap())
        .collect();
    let cfg = QuadratureConfig {
        samples: 1 << 15,
        tol: 2e-3,
        ..Default::default()
    };
    let rows = convergence_experiment(&p, &tri, &omegas, &cfg, 1e-3).unwrap();
    // frozen from the pre-build oracle run (exact phases, mod-1 reduced)
    let frozen = [
        0.11989476363991851,
        0.05723312007475243,
        0.023075602584206288,
        0.009257730503514897,
    ];
    for (row, expect) in rows.iter().zip(&frozen) {
        assert!(
            (row.lhs_sum - expect).abs() < 1e-10,
            "lhs {} vs frozen {expect}",
            row.lhs_sum
        );
        assert!(row.discrepancy_exact);
    }
    // the integral over the lower-left triangle vanishes by symmetry,
    // so the error column tracks the lhs magnitudes downward
    assert!(rows.last().unwrap().error < rows[0].error);
    assert!(rows.last().unwrap().discrepancy < rows[0].discrepancy);
    // Koksma totals are valid upper bounds for every row
    for row in &rows {
        assert!(row.error <= row.koksma_total);
    }
}

/// Integral additivity: the value over the square agrees with the sum
/// over the two triangles of a diagonal split, within combined errors.
#[test]
fn log_integral_additivity() {
    let p = LaurentPolynomial::t_minus_one(0, 2);
    let cfg = QuadratureConfig {
        samples: 1 << 16,
        tol: 1e-3,
        ..Default::default()
    };
    let square = Polytope::unit_box(2);
    let lower = Polytope::from_vertices(&[
        vec![rat(0, 1), rat(0, 1)],
        vec![rat(1, 1), rat(0, 1)],
        vec![rat(1, 1), rat(1, 1)],
    ])
    .unwrap();
    let upper = Polytope::from_vertices(&[
        vec![rat(0, 1), rat(0, 1)],
        vec![rat(0, 1), rat(1, 1)],
        vec![rat(1, 1), rat(1, 1)],
    ])
    .unwrap();
    let whole = polytope_log_integral(&p, &square, &cfg).unwrap();
    let a = polytope_log_integral(&p, &lower, &cfg).unwrap();
    let b = polytope_log_integral(&p, &upper, &cfg).unwrap();
    let gap = (whole.estimate - a.estimate - b.estimate).abs();
    let budget = 3.0 * cfg.tol + whole.sampling_error + a.sampling_error + b.sampling_error;
    assert!(gap <= budget, "gap {gap} over budget {budget}");
}

/// Epsilon re-verification holds across a parameter grid.
#[test]
fn constants_constraints_post_hoc() {
    for (d, k) in [(2usize, 2u64), (2, 7), (3, 2), (4, 2), (3, 5)] {
        for eps0 in [rat(1, 3), rat(1, 2), rat(9, 10)] {
            let res = gamma_c(d, k, &eps0).unwrap();
            verify_epsilon_constraints(&res).unwrap();
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// The planar sweep agrees with the naive oracle on random rational
    /// point sets.
    #[test]
    fn sweep_matches_naive(
        pts in prop::collection::vec((0i64..12, 0i64..12), 1..10),
        d in 1usize..=2,
    ) {
        let points: Vec<Vec<Rat>> = pts
            .iter()
            .map(|&(a, b)| {
                (0..d)
                    .map(|i| if i == 0 { rat(a, 12) } else { rat(b, 12) })
                    .collect()
            })
            .collect();
        let s = PointSet::from_rational(d, points).unwrap();
        let rep = box_discrepancy(&s).unwrap();
        prop_assert_eq!(rep.d_exact.unwrap(), oracle::naive_box_discrepancy(&s));
    }

    /// Strictness degree never exceeds the order, and the subgroup test
    /// accepts the defining witness (order, 0).
    #[test]
    fn strictness_bounded_by_order(num1 in 0i64..40, num2 in 0i64..40, den in 1i64..40) {
        let w = TorsionPoint::new(&[rat(num1, den), rat(num2, den)]).unwrap();
        let delta = w.strictness_degree();
        prop_assert!(delta >= 1);
        prop_assert!(delta <= w.order());
        let axis = vec![w.order() as i64, 0];
        prop_assert!(w.subgroup_member(&equid_core::torus::LatticeVector(axis)));
    }

    /// Unimodular completions satisfy their postconditions and the
    /// inverse-norm estimate.
    #[test]
    fn completion_postconditions(entries in prop::collection::vec(-60i64..=60, 2..=4)) {
        let mut a: Vec<BigInt> = entries.iter().map(|&x| BigInt::from(x)).collect();
        let mut g = BigInt::zero();
        for x in &a {
            g = num_integer::Integer::gcd(&g, x);
        }
        prop_assume!(!g.is_zero());
        for x in a.iter_mut() {
            *x = &*x / &g;
        }
        let d = a.len();
        let m = complete_primitive(&a).unwrap();
        prop_assert_eq!(imat_det(&m).abs(), BigInt::one());
        for (i, ai) in a.iter().enumerate() {
            prop_assert_eq!(&m[i][0], ai);
        }
        let norm_a = a.iter().map(|x| x.abs()).max().unwrap();
        let bound = BigInt::from(2).pow(d.saturating_sub(2) as u32) * norm_a;
        prop_assert!(equid_core::linalg::imat_max_norm(&m) <= bound);
        prop_assert!(inverse_norm_check(&m).unwrap().ok);
    }

    /// chi is within [0,1], vanishes outside, and is exactly chi_Delta
    /// away from the shell.
    #[test]
    fn chi_range_and_matching(seed in 0u64..500) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let Some(p) = random_polytope(&mut rng, 2, 8) else {
            return Ok(());
        };
        let eps = rat(1, 4);
        let shrink = p.shrink(&eps).unwrap();
        for _ in 0..20 {
            let y = vec![
                rat(rng.random_range(-4..20), 16),
                rat(rng.random_range(-4..20), 16),
            ];
            let chi = p.continuous_characteristic(&eps, &y).unwrap();
            prop_assert!(chi >= rat(0, 1) && chi <= rat(1, 1));
            if !p.contains(&y) {
                prop_assert_eq!(chi, rat(0, 1));
            } else if shrink.inner.contains(&y) {
                prop_assert_eq!(chi, rat(1, 1));
            }
        }
    }
}

/// The quadrature report is a pure function of its configuration.
#[test]
fn quadrature_reruns_identical() {
    let p = LaurentPolynomial::t_minus_t(0, 1, 2);
    let square = Polytope::unit_box(2);
    let cfg = QuadratureConfig {
        samples: 1 << 12,
        seed: 5,
        ..Default::default()
    };
    let a = polytope_log_integral(&p, &square, &cfg).unwrap();
    let b = polytope_log_integral(&p, &square, &cfg).unwrap();
    assert_eq!(a.estimate.to_bits(), b.estimate.to_bits());
    assert_eq!(a.ladder, b.ladder);
}

/// Sweep rows that carry a decomposition reassemble the archimedean
/// height exactly up to float reordering.
#[test]
fn sweep_decomposition_reassembles() {
    let rows = equid_core::heights::height_sweep(5, 80, 0.618, 1e-3).unwrap();
    let mut with_parts = 0;
    for r in &rows {
        if let Some(parts) = &r.decomposition {
            let sum: f64 = parts.iter().sum();
            assert!(
                (sum - r.report.h_arch).abs() < 1e-12,
                "p = {}: {} vs {}",
                r.p,
                sum,
                r.report.h_arch
            );
            with_parts += 1;
        }
    }
    assert!(with_parts >= 10);
}

/// Totient sanity for the orbit sizes used across the experiments.
#[test]
fn totient_reference_values() {
    let known = [
        (1u64, 1u64),
        (2, 1),
        (6, 2),
        (10, 4),
        (12, 4),
        (100, 40),
        (997, 996),
    ];
    for (n, phi) in known {
        assert_eq!(euler_phi(n), phi);
    }
}

/// Exact surface enclosures shrink as requested and bracket floats.
#[test]
fn surface_enclosure_brackets() {
    let mut rng = ChaCha8Rng::seed_from_u64(35);
    for _ in 0..6 {
        let Some(p) = random_polytope(&mut rng, 2, 10) else {
            continue;
        };
        let (lo, hi) = p.surface_area_enclosure().unwrap();
        assert!(lo <= hi);
        assert!(rat_to_f64(&(hi - lo)) < 1e-20);
    }
}
