//! Laurent polynomials on the torus with exact Gaussian-rational
//! coefficients: evaluation, the truncated logarithm, the binomial
//! atorality criterion, zero detection on Galois orbits, Mahler
//! measures and log-integrals over polytopes.
//!
//! Quadrature is a seeded deterministic Halton stream with a truncation
//! ladder `r_j = 2^-j`; the ladder index increases until two consecutive
//! estimates agree within half the requested tolerance.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::polytope::Polytope;
use crate::qmc::{cube_to_simplex, HaltonStream};
use crate::ratio::{frac_mod1, rat_to_f64, Rat};
use crate::torus::TorsionPoint;
use crate::{Error, Result};

/// A complex number with exact rational real and imaginary parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussianRational {
    pub re: Rat,
    pub im: Rat,
}

impl GaussianRational {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_int(re: i64) -> Self {
        GaussianRational {
            re: Rat::from_integer(BigInt::from(re)),
            im: Rat::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// `|c|^2`, exact.
    pub fn norm_sq(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }

    fn mul(&self, other: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }

    fn conj(&self) -> GaussianRational {
        GaussianRational {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// If this value is a root of unity inside the Gaussian rationals
    /// (hence one of `1, i, -1, -i`), its angle as a rational in `[0,1)`.
    pub fn root_of_unity_angle(&self) -> Option<Rat> {
        let one = Rat::one();
        if self.im.is_zero() {
            if self.re == one {
                return Some(Rat::zero());
            }
            if self.re == -one.clone() {
                return Some(Rat::new(BigInt::one(), BigInt::from(2)));
            }
        }
        if self.re.is_zero() {
            if self.im == one {
                return Some(Rat::new(BigInt::one(), BigInt::from(4)));
            }
            if self.im == -one {
                return Some(Rat::new(BigInt::from(3), BigInt::from(4)));
            }
        }
        None
    }
}

/// Tri-state answer of the atorality criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Atorality {
    /// The sufficient condition applies.
    EssentiallyAtoral,
    /// Outside the implemented sufficient condition; no verdict.
    Unknown,
}

/// A Laurent polynomial: distinct integer exponent vectors with nonzero
/// Gaussian-rational coefficients, kept in lexicographic term order.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentPolynomial {
    dim: usize,
    terms: Vec<(Vec<i64>, GaussianRational)>,
}

impl LaurentPolynomial {
    pub fn new(dim: usize, terms: Vec<(Vec<i64>, GaussianRational)>) -> Result<Self> {
        let mut merged: std::collections::BTreeMap<Vec<i64>, GaussianRational> =
            std::collections::BTreeMap::new();
        for (exp, coeff) in terms {
            if exp.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: exp.len(),
                });
            }
            merged
                .entry(exp)
                .and_modify(|c| *c = GaussianRational::new(&c.re + &coeff.re, &c.im + &coeff.im))
                .or_insert(coeff);
        }
        let terms: Vec<(Vec<i64>, GaussianRational)> =
            merged.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(LaurentPolynomial { dim, terms })
    }

    /// `T_var - 1` in `dim` variables.
    pub fn t_minus_one(var: usize, dim: usize) -> Self {
        let mut exp = vec![0i64; dim];
        exp[var] = 1;
        LaurentPolynomial::new(
            dim,
            vec![
                (exp, GaussianRational::from_int(1)),
                (vec![0; dim], GaussianRational::from_int(-1)),
            ],
        )
        .expect("valid terms")
    }

    /// `T_a - T_b` in `dim` variables.
    pub fn t_minus_t(a: usize, b: usize, dim: usize) -> Self {
        let mut ea = vec![0i64; dim];
        ea[a] = 1;
        let mut eb = vec![0i64; dim];
        eb[b] = 1;
        LaurentPolynomial::new(
            dim,
            vec![
                (ea, GaussianRational::from_int(1)),
                (eb, GaussianRational::from_int(-1)),
            ],
        )
        .expect("valid terms")
    }

    pub fn constant(c: GaussianRational, dim: usize) -> Self {
        LaurentPolynomial::new(dim, vec![(vec![0; dim], c)]).expect("valid terms")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[(Vec<i64>, GaussianRational)] {
        &self.terms
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.iter().all(|&e| e == 0)
    }

    /// Multiplies by the monomial `T^a` (shifts every exponent).
    pub fn mul_monomial(&self, a: &[i64]) -> Result<Self> {
        if a.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: a.len(),
            });
        }
        let terms = self
            .terms
            .iter()
            .map(|(exp, c)| (exp.iter().zip(a).map(|(e, s)| e + s).collect(), c.clone()))
            .collect();
        LaurentPolynomial::new(self.dim, terms)
    }

    /// Scales every coefficient by the rational `c`.
    pub fn scale(&self, c: &Rat) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(exp, coeff)| {
                (
                    exp.clone(),
                    GaussianRational::new(&coeff.re * c, &coeff.im * c),
                )
            })
            .collect();
        LaurentPolynomial::new(self.dim, terms).expect("scale keeps exponents")
    }

    /// Evaluates at a complex vector by compensated summation.
    /// Errors on a zero coordinate that meets a negative exponent.
    pub fn evaluate(&self, z: &[Complex64]) -> Result<Complex64> {
        if z.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: z.len(),
            });
        }
        let mut sum = Complex64::new(0.0, 0.0);
        let mut comp = Complex64::new(0.0, 0.0);
        for (exp, coeff) in &self.terms {
            let mut term = coeff.to_complex();
            for (zi, &e) in z.iter().zip(exp) {
                if e == 0 {
                    continue;
                }
                if zi.norm_sqr() == 0.0 && e < 0 {
                    return Err(Error::BadInput(
                        "zero coordinate with negative exponent".into(),
                    ));
                }
                term *= zi.powi(e as i32);
            }
            // Kahan step
            let y = term - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        Ok(sum)
    }

    /// Evaluates `P(e(x))` at a real angle vector; phases are summed
    /// before exponentiation, which is the accurate path on the torus.
    pub fn evaluate_on_torus(&self, x: &[f64]) -> Complex64 {
        let mut sum = Complex64::new(0.0, 0.0);
        for (exp, coeff) in &self.terms {
            let phase: f64 = exp.iter().zip(x).map(|(&e, &xi)| e as f64 * xi).sum();
            let (s, c) = (2.0 * std::f64::consts::PI * phase.fract()).sin_cos();
            sum += coeff.to_complex() * Complex64::new(c, s);
        }
        sum
    }

    /// Evaluates `P(e(q))` at a rational angle vector with the phase
    /// reduced exactly mod 1 before any floating point enters.
    pub fn evaluate_at_rational_angles(&self, q: &[Rat]) -> Complex64 {
        let mut sum = Complex64::new(0.0, 0.0);
        for (exp, coeff) in &self.terms {
            let mut phase = Rat::zero();
            for (&e, qi) in exp.iter().zip(q) {
                phase += Rat::from_integer(BigInt::from(e)) * qi;
            }
            let ph = rat_to_f64(&frac_mod1(&phase));
            let (s, c) = (2.0 * std::f64::consts::PI * ph).sin_cos();
            sum += coeff.to_complex() * Complex64::new(c, s);
        }
        sum
    }

    /// Decomposes a two-term polynomial as `c1 T^m - c2 T^n`
    /// (`m` lexicographically larger): returns `(m, c1, n, c2)`.
    pub fn as_binomial(&self) -> Option<(&[i64], &GaussianRational, Vec<i64>, GaussianRational)> {
        if self.terms.len() != 2 {
            return None;
        }
        // canonical order is lex ascending: terms[1] is the larger exponent
        let (n_exp, n_coeff) = &self.terms[0];
        let (m_exp, m_coeff) = &self.terms[1];
        Some((
            m_exp,
            m_coeff,
            n_exp.clone(),
            GaussianRational::new(-n_coeff.re.clone(), -n_coeff.im.clone()),
        ))
    }

    /// The binomial sufficient condition for essential atorality:
    /// nonzero constants qualify, and so do binomials `c1 T^m - c2 T^n`
    /// with `m != n` and `|c1| = |c2|` (checked exactly as
    /// `|c1|^2 = |c2|^2`) in `d >= 2` variables. Everything else is
    /// `Unknown`: the general decision problem is out of scope.
    pub fn binomial_atoral(&self) -> Atorality {
        if self.is_constant() && !self.is_zero() {
            return Atorality::EssentiallyAtoral;
        }
        if self.dim >= 2 {
            if let Some((m, c1, n, c2)) = self.as_binomial() {
                if m != n.as_slice() && c1.norm_sq() == c2.norm_sq() {
                    return Atorality::EssentiallyAtoral;
                }
            }
        }
        Atorality::Unknown
    }
}

/// The truncated logarithm `log_r(v) = log max(r, v)`.
pub fn log_r(r: f64, v: f64) -> f64 {
    assert!(r > 0.0, "truncation level must be positive");
    r.max(v).ln()
}

/// Does some Galois conjugate of `omega` kill `P`?
///
/// For binomials `c1 T^m - c2 T^n` whose coefficient ratio is a root of
/// unity in the Gaussian rationals, the test is an exact congruence scan
/// over the orbit. Otherwise it falls back to a numeric threshold
/// (`|P| < 1e-12` at some conjugate).
pub fn exact_zero_on_orbit(p: &LaurentPolynomial, omega: &TorsionPoint) -> bool {
    if let Some((m, c1, n, c2)) = p.as_binomial() {
        if c1.norm_sq() == c2.norm_sq() {
            // ratio c2/c1 = c2 * conj(c1) / |c1|^2
            let c1_conj = c1.conj();
            let num = c2.mul(&c1_conj);
            let nsq = c1.norm_sq();
            let ratio = GaussianRational::new(&num.re / &nsq, &num.im / &nsq);
            if let Some(theta) = ratio.root_of_unity_angle() {
                let a: Vec<i64> = m.iter().zip(&n).map(|(mi, ni)| mi - ni).collect();
                for conj in omega.galois_orbit() {
                    let mut phase = Rat::zero();
                    for (&ai, qi) in a.iter().zip(conj.angles()) {
                        phase += Rat::from_integer(BigInt::from(ai)) * qi;
                    }
                    if frac_mod1(&(phase - &theta)).is_zero() {
                        return true;
                    }
                }
                return false;
            }
        } else {
            // moduli differ: no zero on the unit torus at all
            return false;
        }
    }
    // numeric threshold mode
    omega
        .galois_orbit()
        .iter()
        .any(|conj| p.evaluate_at_rational_angles(conj.angles()).norm() < 1e-12)
}

/// Configuration for the truncated-log quadrature.
#[derive(Debug, Clone)]
pub struct QuadratureConfig {
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub ladder_min: u32,
    pub ladder_max: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            samples: 1 << 17,
            seed: 0,
            tol: 1e-3,
            ladder_min: 4,
            ladder_max: 20,
        }
    }
}

/// Outcome of a truncated-log quadrature run.
#[derive(Debug, Clone)]
pub struct QuadratureReport {
    pub estimate: f64,
    /// `(j, estimate at r = 2^-j)` for each ladder rung.
    pub ladder: Vec<(u32, f64)>,
    pub converged: bool,
    /// Crude block-based sampling-error estimate.
    pub sampling_error: f64,
    pub samples: usize,
    pub seed: u64,
}

/// The Mahler measure `m(P)`: QMC average of `log|P(e(x))|` over the
/// unit cube with the truncation ladder.
pub fn mahler_measure(p: &LaurentPolynomial, cfg: &QuadratureConfig) -> Result<QuadratureReport> {
    if p.is_zero() {
        return Err(Error::BadInput(
            "Mahler measure of the zero polynomial".into(),
        ));
    }
    let mut stream = HaltonStream::new(p.dim(), cfg.seed);
    let rungs: Vec<u32> = (cfg.ladder_min..=cfg.ladder_max).collect();
    let mut sums = vec![0.0f64; rungs.len()];
    let nblocks = 16usize;
    let mut block_sums = vec![0.0f64; nblocks];
    let block_len = (cfg.samples / nblocks).max(1);
    for i in 0..cfg.samples {
        let x = stream.next_point();
        let v = p.evaluate_on_torus(&x).norm();
        let lv = v.ln(); // -inf on exact zeros, absorbed by the max below
        for (k, &j) in rungs.iter().enumerate() {
            sums[k] += lv.max(-(j as f64) * std::f64::consts::LN_2);
        }
        let b = (i / block_len).min(nblocks - 1);
        block_sums[b] += lv.max(-(cfg.ladder_max as f64) * std::f64::consts::LN_2);
    }
    finish_ladder(&rungs, &sums, cfg, &block_sums, block_len)
}

/// `int_Delta log|P(e(x))| dx` by triangulating the polytope and mapping
/// a volume-weighted QMC stream into each simplex, with the same ladder.
pub fn polytope_log_integral(
    p: &LaurentPolynomial,
    delta: &Polytope,
    cfg: &QuadratureConfig,
) -> Result<QuadratureReport> {
    if p.is_zero() {
        return Err(Error::BadInput("integral of the zero polynomial".into()));
    }
    if !delta.is_full_dimensional() || delta.ambient_dim() != p.dim() {
        return Err(Error::NotFullDimensional {
            dim: delta.dim(),
            ambient: delta.ambient_dim(),
        });
    }
    let d = p.dim();
    let simplices = delta.triangulate();
    let total_vol = rat_to_f64(&delta.volume());
    let rungs: Vec<u32> = (cfg.ladder_min..=cfg.ladder_max).collect();
    let mut weighted = vec![0.0f64; rungs.len()];
    let nblocks = 16usize;
    let mut block_est = vec![0.0f64; nblocks];
    for (sidx, simplex) in simplices.iter().enumerate() {
        let verts: Vec<Vec<f64>> = simplex
            .iter()
            .map(|pnt| pnt.iter().map(rat_to_f64).collect())
            .collect();
        let vol = simplex_volume_f64(&verts);
        if vol == 0.0 {
            continue;
        }
        let share = ((cfg.samples as f64) * vol / total_vol).round().max(1.0) as usize;
        let mut stream = HaltonStream::new(d, cfg.seed.wrapping_add(1 + sidx as u64));
        let mut sums = vec![0.0f64; rungs.len()];
        let block_len = (share / nblocks).max(1);
        for i in 0..share {
            let u = stream.next_point();
            let x = cube_to_simplex(&u, &verts);
            let v = p.evaluate_on_torus(&x).norm();
            let lv = v.ln();
            for (k, &j) in rungs.iter().enumerate() {
                sums[k] += lv.max(-(j as f64) * std::f64::consts::LN_2);
            }
            let b = (i / block_len).min(nblocks - 1);
            block_est[b] += vol * lv.max(-(cfg.ladder_max as f64) * std::f64::consts::LN_2)
                / (share as f64 / nblocks as f64);
        }
        for (k, s) in sums.iter().enumerate() {
            weighted[k] += vol * s / share as f64;
        }
    }
    // the ladder estimates already integrate over the polytope
    let ladder: Vec<(u32, f64)> = rungs
        .iter()
        .cloned()
        .zip(weighted.iter().cloned())
        .collect();
    let (estimate, converged) = ladder_verdict(&ladder, cfg.tol);
    let mean = block_est.iter().sum::<f64>() / nblocks as f64;
    let var = block_est
        .iter()
        .map(|b| (b - mean) * (b - mean))
        .sum::<f64>()
        / nblocks as f64;
    let sampling_error = (var / nblocks as f64).sqrt() * 2.0;
    Ok(QuadratureReport {
        estimate,
        ladder,
        converged,
        sampling_error,
        samples: cfg.samples,
        seed: cfg.seed,
    })
}

fn simplex_volume_f64(verts: &[Vec<f64>]) -> f64 {
    let d = verts.len() - 1;
    let mut mat: Vec<Vec<f64>> = (0..d)
        .map(|i| (0..d).map(|j| verts[i][j] - verts[d][j]).collect())
        .collect();
    // Gaussian determinant
    let mut det = 1.0;
    for c in 0..d {
        let piv = (c..d).max_by(|&a, &b| mat[a][c].abs().partial_cmp(&mat[b][c].abs()).unwrap());
        let piv = piv.unwrap();
        if mat[piv][c] == 0.0 {
            return 0.0;
        }
        mat.swap(c, piv);
        det *= mat[c][c];
        for r in c + 1..d {
            let f = mat[r][c] / mat[c][c];
            let (pivot_rows, rest) = mat.split_at_mut(c + 1);
            for (x, p) in rest[r - c - 1][c..d].iter_mut().zip(&pivot_rows[c][c..d]) {
                *x -= f * p;
            }
        }
    }
    let mut fact = 1.0;
    for k in 1..=d {
        fact *= k as f64;
    }
    det.abs() / fact
}

fn finish_ladder(
    rungs: &[u32],
    sums: &[f64],
    cfg: &QuadratureConfig,
    block_sums: &[f64],
    block_len: usize,
) -> Result<QuadratureReport> {
    let n = cfg.samples as f64;
    let ladder: Vec<(u32, f64)> = rungs
        .iter()
        .copied()
        .zip(sums.iter().map(|s| s / n))
        .collect();
    let (estimate, converged) = ladder_verdict(&ladder, cfg.tol);
    let means: Vec<f64> = block_sums.iter().map(|s| s / block_len as f64).collect();
    let mean = means.iter().sum::<f64>() / means.len() as f64;
    let var = means.iter().map(|m| (m - mean) * (m - mean)).sum::<f64>() / means.len() as f64;
    let sampling_error = (var / means.len() as f64).sqrt() * 2.0;
    Ok(QuadratureReport {
        estimate,
        ladder,
        converged,
        sampling_error,
        samples: cfg.samples,
        seed: cfg.seed,
    })
}

fn ladder_verdict(ladder: &[(u32, f64)], tol: f64) -> (f64, bool) {
    for w in ladder.windows(2) {
        if (w[1].1 - w[0].1).abs() < tol / 2.0 {
            return (w[1].1, true);
        }
    }
    (ladder.last().map(|&(_, v)| v).unwrap_or(0.0), false)
}
