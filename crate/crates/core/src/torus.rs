//! Torsion points of the `d`-dimensional algebraic torus, represented by
//! exact rational angle vectors in `[0,1)^d`.
//!
//! All group-law and membership tests are exact; the complex embedding
//! `e(x)` is the only floating-point surface.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::discrepancy::PointSet;
use crate::ratio::{frac_mod1, lcm_u64, rat_to_f64, Rat};
use crate::{Error, Result};

/// An integer vector, pairing a torsion point with the subgroup relation
/// `omega^a = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeVector(pub Vec<i64>);

impl LatticeVector {
    pub fn max_norm(&self) -> u64 {
        self.0.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0)
    }
}

/// A torsion point: reduced rational angles `q_i` in `[0,1)` with
/// `order = lcm` of the denominators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionPoint {
    angles: Vec<Rat>,
    order: u64,
}

impl TorsionPoint {
    /// Builds a torsion point from arbitrary rational angles, reducing
    /// each into `[0,1)`.
    pub fn new(q: &[Rat]) -> Result<Self> {
        if q.is_empty() {
            return Err(Error::BadInput("empty angle vector".into()));
        }
        let angles: Vec<Rat> = q.iter().map(frac_mod1).collect();
        let mut order = 1u64;
        for a in &angles {
            let den = a
                .denom()
                .to_u64()
                .ok_or_else(|| Error::Overflow("angle denominator exceeds u64".into()))?;
            order = lcm_u64(order, den)?;
        }
        Ok(TorsionPoint { angles, order })
    }

    pub fn from_strs(parts: &[&str]) -> Result<Self> {
        let q: Result<Vec<Rat>> = parts.iter().map(|s| crate::ratio::parse_rat(s)).collect();
        Self::new(&q?)
    }

    pub fn dim(&self) -> usize {
        self.angles.len()
    }

    pub fn angles(&self) -> &[Rat] {
        &self.angles
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_identity(&self) -> bool {
        self.order == 1
    }

    /// Numerators of the angles over the common denominator `order`.
    pub fn residues(&self) -> Vec<u64> {
        self.angles
            .iter()
            .map(|a| {
                let num = a.numer() * BigInt::from(self.order) / a.denom();
                num.to_u64().expect("residue fits: 0 <= num < order")
            })
            .collect()
    }

    /// Exact test of `omega^a = 1`, i.e. `<a, q>` integral.
    pub fn subgroup_member(&self, a: &LatticeVector) -> bool {
        if a.0.len() != self.dim() {
            return false;
        }
        let mut acc = Rat::zero();
        for (ai, qi) in a.0.iter().zip(&self.angles) {
            acc += Rat::from_integer(BigInt::from(*ai)) * qi;
        }
        acc.is_integer()
    }

    /// The strictness degree `delta(omega)`: minimal max-norm of a
    /// nonzero integer vector `a` with `omega^a = 1`, found by expanding
    /// max-norm shells. Terminates because `a = (order, 0, ..., 0)`
    /// always qualifies.
    pub fn strictness_degree(&self) -> u64 {
        self.strictness_degree_with_witness().0
    }

    /// Strictness degree together with the first witness found on the
    /// minimal shell (deterministic scan order).
    pub fn strictness_degree_with_witness(&self) -> (u64, LatticeVector) {
        let d = self.dim();
        let n = self.order as i128;
        let residues: Vec<i128> = self.residues().iter().map(|&u| u as i128).collect();
        let qualifies = |a: &[i64]| -> bool {
            let mut acc: i128 = 0;
            for (ai, ui) in a.iter().zip(&residues) {
                acc += (*ai as i128) * ui;
            }
            acc.rem_euclid(n) == 0
        };
        for radius in 1..=self.order {
            let mut hit: Option<Vec<i64>> = None;
            visit_shell(d, radius as i64, &mut |a| {
                if hit.is_none() && qualifies(a) {
                    hit = Some(a.to_vec());
                }
            });
            if let Some(a) = hit {
                return (radius, LatticeVector(a));
            }
        }
        // unreachable in exact arithmetic: (order, 0, ..., 0) qualifies
        let mut a = vec![0i64; d];
        a[0] = self.order as i64;
        (self.order, LatticeVector(a))
    }

    /// The Galois orbit `{ k . q mod 1 : gcd(k, order) = 1 }` in
    /// ascending-`k` order; its size is `phi(order)`.
    pub fn galois_orbit(&self) -> Vec<TorsionPoint> {
        let n = self.order;
        let mut orbit = Vec::new();
        for k in 1..=n.max(1) {
            if n.gcd(&k) != 1 {
                continue;
            }
            let angles: Vec<Rat> = self
                .angles
                .iter()
                .map(|q| frac_mod1(&(q * Rat::from_integer(BigInt::from(k)))))
                .collect();
            orbit.push(TorsionPoint { angles, order: n });
        }
        orbit
    }

    /// The orbit's angle vectors as a point set in `[0,1)^d`.
    pub fn orbit_angles(&self) -> PointSet {
        let pts: Vec<Vec<Rat>> = self.galois_orbit().into_iter().map(|w| w.angles).collect();
        PointSet::from_rational(self.dim(), pts).expect("orbit angles are valid")
    }

    /// Complex embedding of this point's angles.
    pub fn embed_complex(&self) -> Vec<Complex64> {
        embed(&self.angles.iter().map(rat_to_f64).collect::<Vec<_>>())
    }
}

impl std::fmt::Display for TorsionPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.angles.iter().map(crate::ratio::fmt_rat).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Applies `f` to every integer vector with max-norm exactly `radius`.
fn visit_shell(d: usize, radius: i64, f: &mut impl FnMut(&[i64])) {
    let mut a = vec![0i64; d];
    fn rec(a: &mut Vec<i64>, i: usize, radius: i64, on_shell: bool, f: &mut impl FnMut(&[i64])) {
        if i == a.len() {
            if on_shell {
                f(a);
            }
            return;
        }
        for v in -radius..=radius {
            a[i] = v;
            rec(a, i + 1, radius, on_shell || v.abs() == radius, f);
        }
    }
    rec(&mut a, 0, radius, false, f);
}

/// Componentwise complex exponential `e(x) = (e^{2 pi i x_1}, ...)`.
pub fn embed(x: &[f64]) -> Vec<Complex64> {
    x.iter()
        .map(|&t| {
            let (s, c) = (2.0 * std::f64::consts::PI * t).sin_cos();
            Complex64::new(c, s)
        })
        .collect()
}

/// Euler's totient.
pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat;

    fn omega(parts: &[&str]) -> TorsionPoint {
        TorsionPoint::from_strs(parts).unwrap()
    }

    #[test]
    fn construction_reduces_and_orders() {
        assert_eq!(omega(&["0", "0"]).order(), 1);
        assert_eq!(omega(&["1/5", "2/5"]).order(), 5);
        assert_eq!(omega(&["1/4", "1/6"]).order(), 12);
        // reduction into [0,1)
        let w = omega(&["7/5", "-1/5"]);
        assert_eq!(w.angles(), &[rat(2, 5), rat(4, 5)]);
        assert_eq!(w.order(), 5);
    }

    #[test]
    fn subgroup_membership() {
        let w = omega(&["1/5", "2/5"]);
        assert!(w.subgroup_member(&LatticeVector(vec![1, 2])));
        assert!(!w.subgroup_member(&LatticeVector(vec![1, 0])));
        let id = omega(&["0", "0"]);
        assert!(id.subgroup_member(&LatticeVector(vec![3, -7])));
    }

    #[test]
    fn strictness_degree_examples() {
        assert_eq!(omega(&["0", "0"]).strictness_degree(), 1);
        assert_eq!(omega(&["1/5", "2/5"]).strictness_degree(), 2);
        // d = 1: delta(1/n) = n
        for n in 1..=12 {
            let w = TorsionPoint::new(&[rat(1, n)]).unwrap();
            assert_eq!(w.strictness_degree(), n as u64);
        }
    }

    #[test]
    fn witness_is_minimal_and_valid() {
        let w = omega(&["1/5", "2/5"]);
        let (delta, a) = w.strictness_degree_with_witness();
        assert_eq!(delta, 2);
        assert_eq!(a.max_norm(), 2);
        assert!(w.subgroup_member(&a));
    }

    #[test]
    fn orbit_of_fifth_root() {
        let w = omega(&["1/5", "2/5"]);
        let orbit = w.galois_orbit();
        assert_eq!(orbit.len(), 4);
        let expect = [
            ["1/5", "2/5"],
            ["2/5", "4/5"],
            ["3/5", "1/5"],
            ["4/5", "3/5"],
        ];
        for (got, want) in orbit.iter().zip(&expect) {
            assert_eq!(got, &omega(want));
        }
        assert_eq!(omega(&["1/4", "1/6"]).galois_orbit().len(), 4); // phi(12)
        assert_eq!(omega(&["0", "0"]).galois_orbit(), vec![omega(&["0", "0"])]);
    }

    #[test]
    fn orbit_angles_pointset() {
        let w = omega(&["1/3", "0"]);
        let ps = w.orbit_angles();
        assert_eq!(ps.len(), 2);
        assert_eq!(ps.points()[0], vec![rat(1, 3), rat(0, 1)]);
        assert_eq!(ps.points()[1], vec![rat(2, 3), rat(0, 1)]);
    }

    #[test]
    fn embedding_values() {
        let z = embed(&[0.0, 0.0]);
        assert!((z[0].re - 1.0).abs() < 1e-15 && z[0].im.abs() < 1e-15);
        let z = embed(&[0.5]);
        assert!((z[0].re + 1.0).abs() < 1e-12 && z[0].im.abs() < 1e-12);
        let z = embed(&[0.25]);
        assert!(z[0].re.abs() < 1e-12 && (z[0].im - 1.0).abs() < 1e-12);
    }

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(5), 4);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(100), 40);
    }

    #[test]
    fn orbit_shares_order_and_delta() {
        let w = omega(&["1/4", "1/6"]);
        let delta = w.strictness_degree();
        for conj in w.galois_orbit() {
            assert_eq!(conj.order(), w.order());
            assert_eq!(conj.strictness_degree(), delta);
        }
    }
}
