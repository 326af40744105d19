//! Heights of the intersection point `P(omega)` of the line
//! `x + y + z = 0` with its torsion translate, the 12-triangle partition
//! of the unit square, and the convergence experiment toward
//! `2 zeta(3) / (3 zeta(2))`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::laurent::LaurentPolynomial;
use crate::polytope::{interiors_intersect, Polytope};
use crate::ratio::{frac_mod1, rat, rat_to_f64, Rat};
use crate::torus::{euler_phi, TorsionPoint};
use crate::{Error, Result};

/// Apery's constant `zeta(3)`, truncated decimal expansion; checked in
/// the tests against the direct series with an integral tail bracket.
pub const ZETA_3: f64 = 1.202_056_903_159_594_2;

/// `zeta(2) = pi^2 / 6`.
pub fn zeta_2() -> f64 {
    std::f64::consts::PI * std::f64::consts::PI / 6.0
}

/// `zeta(3)` by the direct series, summed from the small terms up, with
/// the tail bracketed by `1/(2(N+1)^2) < sum_{n>N} n^-3 < 1/(2N^2)`.
pub fn zeta_3_series(terms: u64) -> (f64, f64) {
    let mut acc = 0.0;
    for n in (1..=terms).rev() {
        let x = n as f64;
        acc += 1.0 / (x * x * x);
    }
    let lo = acc + 1.0 / (2.0 * ((terms + 1) as f64).powi(2));
    let hi = acc + 1.0 / (2.0 * (terms as f64).powi(2));
    (lo, hi)
}

/// The limit height `2 zeta(3) / (3 zeta(2))`.
pub fn limit_height() -> f64 {
    2.0 * ZETA_3 / (3.0 * zeta_2())
}

/// `|e(t) - 1| = 2 |sin(pi t)|` for a rational angle, reduced mod 1
/// exactly before any floating point.
fn unit_gap(t: &Rat) -> f64 {
    let tf = rat_to_f64(&frac_mod1(t));
    2.0 * (std::f64::consts::PI * tf).sin().abs()
}

/// Homogeneous coordinates of the intersection point
/// `P(omega) = [w2^-1 - w1^-1 : 1 - w2^-1 : w1^-1 - 1]`, with a residual
/// check that both linear forms vanish at working precision.
pub fn intersection_point(omega: &TorsionPoint) -> Result<[Complex64; 3]> {
    if omega.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: omega.dim(),
        });
    }
    if omega.is_identity() {
        return Err(Error::IdentityPoint);
    }
    let z = omega.embed_complex();
    let w1_inv = z[0].conj(); // |z| = 1, so the inverse is the conjugate
    let w2_inv = z[1].conj();
    let coords = [
        w2_inv - w1_inv,
        Complex64::new(1.0, 0.0) - w2_inv,
        w1_inv - Complex64::new(1.0, 0.0),
    ];
    let r1 = coords[0] + coords[1] + coords[2];
    let r2 = coords[0] + w1_inv * coords[1] + w2_inv * coords[2];
    if r1.norm() > 1e-10 || r2.norm() > 1e-10 {
        return Err(Error::BadInput(format!(
            "intersection residuals too large: |r1| = {}, |r2| = {}",
            r1.norm(),
            r2.norm()
        )));
    }
    Ok(coords)
}

/// The archimedean height
/// `(1/phi(n)) sum_k log max(|w2^k - w1^k|, |w2^k - 1|, |w1^k - 1|)`
/// over `k` coprime to the order, in ascending-`k` order with
/// compensated summation.
pub fn archimedean_height(omega: &TorsionPoint) -> Result<f64> {
    if omega.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: omega.dim(),
        });
    }
    if omega.is_identity() {
        return Err(Error::IdentityPoint);
    }
    let q1 = &omega.angles()[0];
    let q2 = &omega.angles()[1];
    let mut sum = 0.0;
    let mut comp = 0.0;
    let mut count = 0u64;
    let n = omega.order();
    for k in 1..=n {
        if num_integer::Integer::gcd(&k, &n) != 1 {
            continue;
        }
        count += 1;
        let kr = Rat::from_integer(BigInt::from(k));
        let d_diff = unit_gap(&(&kr * q2 - &kr * q1)); // |w2^k - w1^k|
        let d2 = unit_gap(&(&kr * q2));
        let d1 = unit_gap(&(&kr * q1));
        let m = d_diff.max(d2).max(d1);
        if m == 0.0 {
            return Err(Error::IdentityPoint); // all three distances vanish
        }
        let v = m.ln();
        let y = v - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    Ok(sum / count as f64)
}

/// The non-archimedean part: `-log(p) / (p^(e-1) (p-1))` when the order
/// is a prime power `p^e`, otherwise `0`.
pub fn nonarchimedean_height(omega: &TorsionPoint) -> Result<f64> {
    if omega.is_identity() {
        return Err(Error::IdentityPoint);
    }
    Ok(von_mangoldt_part(omega.order()))
}

fn von_mangoldt_part(order: u64) -> f64 {
    let mut n = order;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            return if n == 1 {
                // order = p^e
                -(p as f64).ln() / ((order / p) as f64 * (p - 1) as f64)
            } else {
                0.0
            };
        }
        p += 1;
    }
    if n > 1 {
        // order itself is prime
        -(n as f64).ln() / (n - 1) as f64
    } else {
        0.0
    }
}

/// Which binomial attains the maximum on a triangle of the partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriangleClass {
    /// `|e(x) - 1|` dominates: `T1 - 1`.
    FirstCoordinate,
    /// `|e(y) - 1|` dominates: `T2 - 1`.
    SecondCoordinate,
    /// `|e(x - y) - 1|` dominates: `T1 - T2`.
    Difference,
}

impl TriangleClass {
    pub fn polynomial(self) -> LaurentPolynomial {
        match self {
            TriangleClass::FirstCoordinate => LaurentPolynomial::t_minus_one(0, 2),
            TriangleClass::SecondCoordinate => LaurentPolynomial::t_minus_one(1, 2),
            TriangleClass::Difference => LaurentPolynomial::t_minus_t(0, 1, 2),
        }
    }

    /// `log |P(e(q))|` at a rational angle pair, via the exact phase.
    pub fn log_abs(self, q: &[Rat]) -> f64 {
        let gap = match self {
            TriangleClass::FirstCoordinate => unit_gap(&q[0]),
            TriangleClass::SecondCoordinate => unit_gap(&q[1]),
            TriangleClass::Difference => unit_gap(&(&q[0] - &q[1])),
        };
        gap.ln()
    }

    fn index(self) -> usize {
        match self {
            TriangleClass::FirstCoordinate => 0,
            TriangleClass::SecondCoordinate => 1,
            TriangleClass::Difference => 2,
        }
    }
}

/// The 12 closed triangles partitioning the unit square, each tagged
/// with the binomial whose modulus dominates on it.
#[derive(Debug, Clone)]
pub struct TrianglePartition {
    pieces: Vec<(Polytope, TriangleClass)>,
}

/// Where an angle pair sits relative to the partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Interior(usize),
    Boundary,
}

impl TrianglePartition {
    /// Builds the partition from hard-coded sixth-integer coordinates
    /// and validates it: the 12 areas sum to 1 exactly and interiors are
    /// pairwise disjoint, so a transcription error fails loudly here.
    pub fn standard() -> Self {
        use TriangleClass::*;
        let tri = |coords: [(i64, i64, i64, i64); 3]| -> Polytope {
            let pts: Vec<Vec<Rat>> = coords
                .iter()
                .map(|&(xn, xd, yn, yd)| vec![rat(xn, xd), rat(yn, yd)])
                .collect();
            Polytope::from_vertices(&pts).expect("valid triangle")
        };
        // The class tags are forced by the argmax of the three gap
        // functions on each triangle (checked below and in the tests);
        // the swap symmetry (x,y) -> (y,x) exchanges the first two
        // classes and fixes the third, which pins the grouping.
        let pieces: Vec<(Polytope, TriangleClass)> = vec![
            // |e(x) - 1| dominates
            (
                tri([(1, 2, 0, 1), (0, 1, 0, 1), (2, 3, 1, 3)]),
                FirstCoordinate,
            ),
            (
                tri([(2, 3, 1, 3), (0, 1, 0, 1), (1, 2, 1, 2)]),
                FirstCoordinate,
            ),
            (
                tri([(1, 1, 1, 1), (1, 3, 2, 3), (1, 2, 1, 1)]),
                FirstCoordinate,
            ),
            (
                tri([(1, 3, 2, 3), (1, 2, 1, 2), (1, 1, 1, 1)]),
                FirstCoordinate,
            ),
            // |e(y) - 1| dominates
            (
                tri([(1, 1, 1, 2), (2, 3, 1, 3), (1, 1, 1, 1)]),
                SecondCoordinate,
            ),
            (
                tri([(0, 1, 0, 1), (1, 3, 2, 3), (0, 1, 1, 2)]),
                SecondCoordinate,
            ),
            (
                tri([(2, 3, 1, 3), (1, 1, 1, 1), (1, 2, 1, 2)]),
                SecondCoordinate,
            ),
            (
                tri([(1, 2, 1, 2), (0, 1, 0, 1), (1, 3, 2, 3)]),
                SecondCoordinate,
            ),
            // |e(x - y) - 1| dominates
            (tri([(1, 1, 0, 1), (2, 3, 1, 3), (1, 1, 1, 2)]), Difference),
            (tri([(0, 1, 1, 2), (1, 3, 2, 3), (0, 1, 1, 1)]), Difference),
            (tri([(1, 2, 0, 1), (1, 1, 0, 1), (2, 3, 1, 3)]), Difference),
            (tri([(0, 1, 1, 1), (1, 3, 2, 3), (1, 2, 1, 1)]), Difference),
        ];
        let total: Rat = pieces.iter().map(|(t, _)| t.volume()).sum();
        assert!(total.is_one(), "triangle areas must sum to 1, got {total}");
        for (i, (a, _)) in pieces.iter().enumerate() {
            for (b, _) in pieces.iter().skip(i + 1) {
                assert!(
                    !interiors_intersect(a, b).expect("full-dimensional triangles"),
                    "triangle interiors overlap"
                );
            }
        }
        TrianglePartition { pieces }
    }

    pub fn pieces(&self) -> &[(Polytope, TriangleClass)] {
        &self.pieces
    }

    /// Locates a rational point: strictly inside exactly one triangle,
    /// or on the union of the boundaries.
    pub fn locate(&self, q: &[Rat]) -> Location {
        for (i, (t, _)) in self.pieces.iter().enumerate() {
            if t.strictly_contains(q) {
                return Location::Interior(i);
            }
        }
        Location::Boundary
    }

    /// Checks on sampled interior points that the tagged binomial
    /// attains the maximum of the three gap functions; returns the
    /// failure count.
    pub fn argmax_failures(&self, samples_per_triangle: usize, seed: u64) -> usize {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut failures = 0;
        for (t, class) in &self.pieces {
            let verts = t.vertices();
            for _ in 0..samples_per_triangle {
                // random rational convex combination with positive weights
                let ws: Vec<i64> = (0..verts.len()).map(|_| rng.random_range(1..100)).collect();
                let total: i64 = ws.iter().sum();
                let q: Vec<Rat> = (0..2)
                    .map(|c| {
                        let mut acc = Rat::zero();
                        for (w, v) in ws.iter().zip(verts) {
                            acc += rat(*w, total) * &v[c];
                        }
                        acc
                    })
                    .collect();
                debug_assert!(t.strictly_contains(&q));
                let gaps = [unit_gap(&q[0]), unit_gap(&q[1]), unit_gap(&(&q[0] - &q[1]))];
                let argmax = (0..3)
                    .max_by(|&a, &b| gaps[a].partial_cmp(&gaps[b]).unwrap())
                    .unwrap();
                if argmax != class.index() && (gaps[argmax] - gaps[class.index()]).abs() > 1e-12 {
                    failures += 1;
                }
            }
        }
        failures
    }
}

/// The assembled height data for one torsion point.
#[derive(Debug, Clone)]
pub struct HeightReport {
    pub order: u64,
    pub delta_degree: u64,
    pub orbit_size: u64,
    pub h_arch: f64,
    pub h_nonarch: f64,
    pub h_total: f64,
    /// `|h_total - 2 zeta(3) / (3 zeta(2))|`.
    pub target_gap: f64,
}

/// Total height `h_arch + h_nonarch` with the gap to the limit value.
pub fn total_height(omega: &TorsionPoint) -> Result<HeightReport> {
    let h_arch = archimedean_height(omega)?;
    let h_nonarch = nonarchimedean_height(omega)?;
    let h_total = h_arch + h_nonarch;
    Ok(HeightReport {
        order: omega.order(),
        delta_degree: omega.strictness_degree(),
        orbit_size: euler_phi(omega.order()),
        h_arch,
        h_nonarch,
        h_total,
        target_gap: (h_total - limit_height()).abs(),
    })
}

/// Per-triangle decomposition of the archimedean height:
/// `h_arch = sum_ij (1/n) sum_{x in Omega_ij} log|P_ij(e(x))|`, valid
/// when no orbit angle lies on a triangle boundary. Boundary hits are
/// reported, never resolved silently.
#[derive(Debug, Clone)]
pub struct Decomposition {
    /// One partial sum per triangle, in partition order.
    pub parts: Vec<f64>,
    pub assembled: f64,
}

pub fn height_decomposition(
    omega: &TorsionPoint,
    partition: &TrianglePartition,
) -> Result<Decomposition> {
    if omega.is_identity() {
        return Err(Error::IdentityPoint);
    }
    let orbit = omega.galois_orbit();
    let n = orbit.len() as f64;
    let mut parts = vec![0.0f64; partition.pieces().len()];
    for conj in &orbit {
        match partition.locate(conj.angles()) {
            Location::Interior(i) => {
                let class = partition.pieces()[i].1;
                parts[i] += class.log_abs(conj.angles());
            }
            Location::Boundary => {
                return Err(Error::BoundaryCollision(
                    conj.angles().iter().map(crate::ratio::fmt_rat).collect(),
                ));
            }
        }
    }
    for p in parts.iter_mut() {
        *p /= n;
    }
    let assembled = parts.iter().sum();
    Ok(Decomposition { parts, assembled })
}

/// One row of the height sweep over the prime family
/// `omega = (1/p, round(ratio * p)/p)`.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub p: u64,
    pub multiplier: u64,
    pub report: HeightReport,
    /// `delta^(-kappa)` for the configured rate exponent; numerically
    /// indistinguishable from 1 at the exact rate constants, emitted for
    /// completeness.
    pub kappa_rate: f64,
    /// Per-triangle decomposition when no boundary hit occurred.
    pub decomposition: Option<Vec<f64>>,
}

/// Sweeps primes in `[lo, hi]`, skipping multipliers that collide with
/// the identity constraints (`a = 0 mod p` cannot happen for
/// `0 < ratio < 1`).
pub fn height_sweep(lo: u64, hi: u64, ratio: f64, kappa: f64) -> Result<Vec<SweepRow>> {
    use rayon::prelude::*;
    let partition = TrianglePartition::standard();
    let primes: Vec<u64> = (lo.max(2)..=hi).filter(|&p| is_prime(p)).collect();
    // rows are independent; the ordered collect keeps the output
    // deterministic regardless of thread count
    primes
        .par_iter()
        .map(|&p| {
            let a = ((ratio * p as f64).round().max(1.0) as u64 % p).max(1);
            let omega = TorsionPoint::new(&[rat(1, p as i64), rat(a as i64, p as i64)])?;
            let report = total_height(&omega)?;
            let kappa_rate = (report.delta_degree as f64).powf(-kappa);
            let decomposition = height_decomposition(&omega, &partition)
                .ok()
                .map(|d| d.parts);
            Ok(SweepRow {
                p,
                multiplier: a,
                report,
                kappa_rate,
                decomposition,
            })
        })
        .collect()
}

/// Height convergence experiment along a strict sequence: strictness
/// degrees must be strictly increasing. Emits one `SweepRow`-like record
/// per point with the decomposition attempted for each.
pub fn height_convergence_experiment(
    omegas: &[TorsionPoint],
) -> Result<Vec<(HeightReport, Option<Vec<f64>>)>> {
    let degrees: Vec<u64> = omegas.iter().map(|w| w.strictness_degree()).collect();
    for i in 1..degrees.len() {
        if degrees[i] <= degrees[i - 1] {
            return Err(Error::NotStrict(i));
        }
    }
    let partition = TrianglePartition::standard();
    let mut out = Vec::with_capacity(omegas.len());
    for w in omegas {
        let report = total_height(w)?;
        let decomposition = height_decomposition(w, &partition).ok().map(|d| d.parts);
        out.push((report, decomposition));
    }
    Ok(out)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return false;
        }
        p += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn omega(parts: &[&str]) -> TorsionPoint {
        TorsionPoint::from_strs(parts).unwrap()
    }

    #[test]
    fn zeta_constants() {
        let (lo, hi) = zeta_3_series(2_000_000);
        assert!(lo <= ZETA_3 && ZETA_3 <= hi, "series bracket [{lo}, {hi}]");
        assert!(hi - lo < 1e-12);
        assert!((limit_height() - 0.4871753129).abs() < 1e-9);
    }

    #[test]
    fn intersection_point_examples() {
        // omega = (-1, -1): coordinates (0, 2, -2)
        let p = intersection_point(&omega(&["1/2", "1/2"])).unwrap();
        assert!(p[0].norm() < 1e-12);
        assert!((p[1] - Complex64::new(2.0, 0.0)).norm() < 1e-12);
        assert!((p[2] + Complex64::new(2.0, 0.0)).norm() < 1e-12);
        // omega = (1, -1): coordinates (-2, 2, 0)
        let p = intersection_point(&omega(&["0", "1/2"])).unwrap();
        assert!((p[0] + Complex64::new(2.0, 0.0)).norm() < 1e-12);
        assert!((p[1] - Complex64::new(2.0, 0.0)).norm() < 1e-12);
        assert!(p[2].norm() < 1e-12);
        // (i, -1): both forms vanish (checked internally)
        assert!(intersection_point(&omega(&["1/4", "1/2"])).is_ok());
        assert!(matches!(
            intersection_point(&omega(&["0", "0"])),
            Err(Error::IdentityPoint)
        ));
    }

    #[test]
    fn archimedean_examples() {
        let h = archimedean_height(&omega(&["1/2", "1/2"])).unwrap();
        assert!((h - 2f64.ln()).abs() < 1e-12);
        let h = archimedean_height(&omega(&["1/3", "2/3"])).unwrap();
        assert!((h - 3f64.ln() / 2.0).abs() < 1e-12);
        // frozen oracle value for (1/5, 2/5)
        let h = archimedean_height(&omega(&["1/5", "2/5"])).unwrap();
        assert!((h - 0.6429653906383268).abs() < 1e-12);
    }

    #[test]
    fn nonarchimedean_examples() {
        assert_eq!(nonarchimedean_height(&omega(&["1/6", "0"])).unwrap(), 0.0);
        let h = nonarchimedean_height(&omega(&["1/5", "2/5"])).unwrap();
        assert!((h + 5f64.ln() / 4.0).abs() < 1e-15);
        let h = nonarchimedean_height(&omega(&["1/8", "0"])).unwrap();
        assert!((h + 2f64.ln() / 4.0).abs() < 1e-15);
    }

    #[test]
    fn order_two_height_vanishes() {
        // h_arch = log 2, h_nonarch = -log 2
        let rep = total_height(&omega(&["1/2", "1/2"])).unwrap();
        assert!(rep.h_total.abs() < 1e-12);
        assert!((rep.target_gap - limit_height()).abs() < 1e-9);
    }

    #[test]
    fn partition_is_exact() {
        let part = TrianglePartition::standard();
        assert_eq!(part.pieces().len(), 12);
        let total: Rat = part.pieces().iter().map(|(t, _)| t.volume()).sum();
        assert!(total.is_one());
        // every piece is a triangle of area 1/12
        for (t, _) in part.pieces() {
            assert_eq!(t.volume(), rat(1, 12));
            assert_eq!(t.vertices().len(), 3);
        }
    }

    #[test]
    fn partition_vertex_incidence() {
        // (2/3, 1/3) is shared by exactly six triangles
        let part = TrianglePartition::standard();
        let v = vec![rat(2, 3), rat(1, 3)];
        let count = part
            .pieces()
            .iter()
            .filter(|(t, _)| t.vertices().iter().any(|w| w == &v))
            .count();
        assert_eq!(count, 6);
    }

    #[test]
    fn partition_argmax_holds_on_samples() {
        let part = TrianglePartition::standard();
        assert_eq!(part.argmax_failures(400, 11), 0);
    }

    #[test]
    fn interior_sample_of_first_triangle() {
        // (0.3, 0.05) lies in the first triangle and the first-coordinate
        // gap dominates there
        let part = TrianglePartition::standard();
        let q = vec![rat(3, 10), rat(1, 20)];
        match part.locate(&q) {
            Location::Interior(i) => {
                assert_eq!(part.pieces()[i].1, TriangleClass::FirstCoordinate)
            }
            Location::Boundary => panic!("sample is interior"),
        }
        let gaps = [unit_gap(&q[0]), unit_gap(&q[1]), unit_gap(&(&q[0] - &q[1]))];
        assert!(gaps[0] > gaps[1] && gaps[0] > gaps[2]);
    }

    #[test]
    fn decomposition_matches_height() {
        let part = TrianglePartition::standard();
        // delta((1/7, 3/7)) = 2 (witness (1,2): 1/7 + 6/7 = 1), yet the
        // orbit misses all six boundary subgroups, so the split applies
        let w = omega(&["1/7", "3/7"]);
        assert_eq!(w.strictness_degree(), 2);
        let dec = height_decomposition(&w, &part).unwrap();
        let h = archimedean_height(&w).unwrap();
        assert!((dec.assembled - h).abs() < 1e-12);
        // a point with delta >= 3 is covered by the sufficient condition
        let w = omega(&["1/11", "7/11"]);
        assert!(w.strictness_degree() >= 3);
        let dec = height_decomposition(&w, &part).unwrap();
        let h = archimedean_height(&w).unwrap();
        assert!((dec.assembled - h).abs() < 1e-12);
    }

    #[test]
    fn boundary_collision_detected_for_small_delta() {
        let part = TrianglePartition::standard();
        let w = omega(&["1/2", "1/2"]);
        assert_eq!(w.strictness_degree(), 1);
        assert!(matches!(
            height_decomposition(&w, &part),
            Err(Error::BoundaryCollision(_))
        ));
    }

    #[test]
    fn sweep_produces_decreasing_gap() {
        let rows = height_sweep(5, 60, 0.618, 1e-3).unwrap();
        assert!(rows.len() >= 10);
        let first = &rows[0];
        let last = rows.last().unwrap();
        assert!(last.report.target_gap < first.report.target_gap);
        // frozen oracle for p = 5: a = 3, delta = 2
        assert_eq!(first.p, 5);
        assert_eq!(first.multiplier, 3);
        assert_eq!(first.report.delta_degree, 2);
        assert!((first.report.h_arch - 0.6429653906383268).abs() < 1e-12);
        assert!((first.report.h_total - 0.24060591252980174).abs() < 1e-12);
    }

    #[test]
    fn experiment_requires_strict_deltas() {
        let ws = vec![omega(&["1/5", "2/5"]), omega(&["1/5", "3/5"])];
        assert!(matches!(
            height_convergence_experiment(&ws),
            Err(Error::NotStrict(1))
        ));
        let ws = vec![omega(&["1/5", "2/5"]), omega(&["1/11", "7/11"])];
        let rows = height_convergence_experiment(&ws).unwrap();
        assert_eq!(rows.len(), 2);
    }

    #[test]
    fn galois_invariance_of_archimedean_height() {
        let w = omega(&["1/7", "3/7"]);
        let base = archimedean_height(&w).unwrap();
        for conj in w.galois_orbit() {
            let h = archimedean_height(&conj).unwrap();
            assert!((h - base).abs() < 1e-12);
        }
    }

    #[test]
    fn nonarch_magnitude_bound() {
        // |h_nonarch| <= 2 log(ord) / ord for prime powers
        for parts in [
            ["1/5", "2/5"],
            ["1/8", "3/8"],
            ["1/27", "4/27"],
            ["1/49", "6/49"],
        ] {
            let w = omega(&parts);
            let h = nonarchimedean_height(&w).unwrap();
            let ord = w.order() as f64;
            assert!(h.abs() <= 2.0 * ord.ln() / ord + 1e-15);
        }
    }
}
