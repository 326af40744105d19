//! Exact computation of the convergence-rate constants: gamma(d,k) and
//! C(d,k) by the explicit recursion, kappa(d,k), the inverse-matrix
//! max-norm bound, and the constructive unimodular completion of a
//! primitive vector.
//!
//! Everything is exact rational arithmetic. C is astronomically large
//! (`d^(1/(2 eps^(d-1)))`-sized); it is kept as a symbolic magnitude and
//! never expanded to an integer.
//!
//! The recursion's final C line takes the minimum of its candidate list
//! as written, but each candidate is a LOWER bound on an admissible C,
//! so the minimum reading undercuts the constraints the constant exists
//! to satisfy (a suspected typo in the source recursion). Both readings
//! are therefore computed and reported: [`ConstantsResult::c`] is the
//! constraint-consistent maximum, the literal minimum travels alongside,
//! and the recursion itself feeds the literal minimum forward (the
//! maximum reading would make the next level's epsilon astronomically
//! small and its gamma unrepresentable).

#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::linalg::{imat_det, imat_max_norm, unimodular_inverse, IMat};
use crate::ratio::{rat_log2, rat_pow, rat_to_f64, Rat};
use crate::{Error, Result};

/// A positive magnitude that may be far beyond integer range:
/// `coeff * base^exponent + addend` with exact rational parts, or an
/// exact rational.
#[derive(Debug, Clone, PartialEq)]
pub enum Magnitude {
    Exact(Rat),
    Power {
        coeff: Rat,
        base: u64,
        exponent: Rat,
        addend: Rat,
    },
}

impl Magnitude {
    pub fn power(base: u64, exponent: Rat) -> Self {
        Magnitude::Power {
            coeff: Rat::one(),
            base,
            exponent,
            addend: Rat::zero(),
        }
    }

    /// `log2` of the magnitude; `+inf` when even the logarithm escapes
    /// `f64` range (the exact exponent stays available).
    pub fn log2(&self) -> f64 {
        match self {
            Magnitude::Exact(r) => {
                if r.is_zero() {
                    f64::NEG_INFINITY
                } else {
                    rat_log2(r)
                }
            }
            Magnitude::Power {
                coeff,
                base,
                exponent,
                addend,
            } => {
                let main = rat_to_f64(exponent) * (*base as f64).log2() + rat_log2(coeff);
                if addend.is_zero() || main > 60.0 {
                    main
                } else {
                    // small enough to matter: fold the addend in via f64
                    (main.exp2() + rat_to_f64(addend)).log2()
                }
            }
        }
    }

    /// Exact order comparison. Resolves the cross cases by rigorous
    /// shortcuts (a power with a large exponent dominates any rational
    /// with fewer bits) and falls back to exact evaluation for small
    /// exponents; same-base powers compare by exponent.
    pub fn cmp_magnitude(&self, other: &Magnitude) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        match (self, other) {
            (Magnitude::Exact(a), Magnitude::Exact(b)) => a.cmp(b),
            (Magnitude::Power { .. }, Magnitude::Exact(b)) => match self.partial_vs_rational(b) {
                Some(o) => o,
                None => Ordering::Equal,
            },
            (Magnitude::Exact(a), Magnitude::Power { .. }) => match other.partial_vs_rational(a) {
                Some(o) => o.reverse(),
                None => Ordering::Equal,
            },
            (
                Magnitude::Power {
                    coeff: c1,
                    base: b1,
                    exponent: e1,
                    addend: a1,
                },
                Magnitude::Power {
                    coeff: c2,
                    base: b2,
                    exponent: e2,
                    addend: a2,
                },
            ) => {
                if b1 == b2 && c1 == c2 {
                    return e1.cmp(e2).then(a1.cmp(a2));
                }
                // distinct shapes: decide on well-separated log2 values,
                // or evaluate exactly when both exponents are small
                let (l1, l2) = (self.log2(), other.log2());
                if (l1 - l2).abs() > 1e-6 * l1.abs().max(l2.abs()).max(1.0) {
                    return l1.partial_cmp(&l2).unwrap_or(Ordering::Equal);
                }
                match (self.to_exact(), other.to_exact()) {
                    (Some(x), Some(y)) => x.cmp(&y),
                    _ => l1.partial_cmp(&l2).unwrap_or(Ordering::Equal),
                }
            }
        }
    }

    /// `self` (a Power) versus a rational, exact.
    fn partial_vs_rational(&self, r: &Rat) -> Option<std::cmp::Ordering> {
        let Magnitude::Power {
            coeff,
            base,
            exponent,
            addend,
        } = self
        else {
            return None;
        };
        // coeff * base^e + addend with base >= 2: if e exceeds the bit
        // length of r (and coeff >= 1, addend >= 0), the power dominates
        if !coeff.is_negative() && coeff >= &Rat::one() && !addend.is_negative() && *base >= 2 {
            let bits = r.numer().bits() as i64 + 1;
            if exponent > &Rat::from_integer(BigInt::from(bits)) {
                return Some(std::cmp::Ordering::Greater);
            }
        }
        match self.to_exact() {
            Some(x) => Some(x.cmp(r)),
            None => Some(std::cmp::Ordering::Greater), // huge exponent
        }
    }

    /// Exact rational value when the exponent is a small integer.
    pub fn to_exact(&self) -> Option<Rat> {
        match self {
            Magnitude::Exact(r) => Some(r.clone()),
            Magnitude::Power {
                coeff,
                base,
                exponent,
                addend,
            } => {
                if !exponent.is_integer() {
                    return None;
                }
                let e = exponent.to_integer().to_u32()?;
                if e > 4096 {
                    return None;
                }
                let pow = Rat::from_integer(BigInt::from(*base).pow(e));
                Some(coeff * pow + addend)
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Magnitude::Exact(r) => crate::ratio::fmt_rat(r),
            Magnitude::Power {
                coeff,
                base,
                exponent,
                addend,
            } => {
                let mut s = String::new();
                if !coeff.is_one() {
                    s.push_str(&format!("{} * ", crate::ratio::fmt_rat(coeff)));
                }
                s.push_str(&format!("{base}^({})", crate::ratio::fmt_rat(exponent)));
                if !addend.is_zero() {
                    s.push_str(&format!(" + {}", crate::ratio::fmt_rat(addend)));
                }
                s
            }
        }
    }
}

/// The full intermediate state of one recursion level.
#[derive(Debug, Clone)]
pub struct LevelTrace {
    /// Number of variables at this level.
    pub n: usize,
    /// Exponent index: the level computes the constants for `k^(2^m)`.
    pub m: u32,
    /// `k^(2^m)`.
    pub k_power: u64,
    /// The `v_1 <= ... <= v_n` sequence.
    pub v: Vec<Rat>,
    /// Every candidate in the epsilon minimum.
    pub eps_candidates: Vec<Rat>,
    pub epsilon: Rat,
    pub gamma: Rat,
    /// Every candidate in the C list.
    pub c_candidates: Vec<Magnitude>,
    /// Literal reading (minimum) — this value feeds the recursion.
    pub c_min: Magnitude,
    /// Constraint-direction reading (maximum of the same list).
    pub c_max: Magnitude,
}

/// Result of the constants recursion.
#[derive(Debug, Clone)]
pub struct ConstantsResult {
    pub d: usize,
    pub k: u64,
    pub eps0: Rat,
    /// `gamma(d,k) = epsilon^(d-1) / (16 (k-1))`, exact.
    pub gamma: Rat,
    /// Constraint-direction C (maximum of the final candidate list).
    pub c: Magnitude,
    /// Literal minimum of the same list, kept for auditability.
    pub c_literal_min: Magnitude,
    /// `log2` of `c` (may be `+inf` for d >= 4; the exact exponent lives
    /// in `c`).
    pub c_log2: f64,
    pub epsilon: Rat,
    pub v: Vec<Rat>,
    /// All levels in computation order; the last entry is the final one.
    pub levels: Vec<LevelTrace>,
}

fn rint(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

fn rbig(v: BigInt) -> Rat {
    Rat::from_integer(v)
}

/// `k^(2^m)` with overflow detection.
fn k_tower(k: u64, m: u32) -> Result<u64> {
    let mut acc = k;
    for _ in 0..m {
        acc = acc
            .checked_mul(acc)
            .ok_or_else(|| Error::Overflow(format!("k^(2^{m}) exceeds u64")))?;
    }
    Ok(acc)
}

/// The `v`-sequence: `v_n = 1/(128 n^2)` and downward
/// `v_s = v_{s+1}^n / (5 s * 80 n) * (1 - prod v_t^n / (2 (4n*160n)^(n-s-1)))`.
fn v_sequence(n: usize) -> Vec<Rat> {
    let mut v = vec![Rat::one(); n + 1]; // 1-indexed
    v[n] = Rat::one() / rint(128 * (n as i64) * (n as i64));
    let mut s = n as i64 - 1;
    while s >= 1 {
        let su = s as usize;
        let mut tail = Rat::one();
        for t in su + 2..=n {
            tail *= rat_pow(&v[t], n as u32);
        }
        let base = rint(4 * n as i64 * 160 * n as i64);
        let denom_pow = rat_pow(&base, (n - su - 1) as u32);
        let factor = Rat::one() - tail / (rint(2) * denom_pow);
        v[su] = rat_pow(&v[su + 1], n as u32) / rint(5 * s * 80 * n as i64) * factor;
        s -= 1;
    }
    v.remove(0);
    v
}

struct Tables {
    // gamma[(n, m)] and c_min[(n, m)] with K = k^(2^m)
    gamma: std::collections::BTreeMap<(usize, u32), Rat>,
    c: std::collections::BTreeMap<(usize, u32), Rat>,
}

/// One recursion level. `inner` levels use the inner-loop coefficient
/// set (they differ from the final line in two denominators; preserved
/// verbatim).
fn run_level(
    n: usize,
    m: u32,
    k: u64,
    inner: bool,
    eps0: &Rat,
    tables: &mut Tables,
) -> Result<LevelTrace> {
    let k_pow = k_tower(k, m)?;
    let k_pow2 = k_tower(k, m + 1)?;
    let v = v_sequence(n);
    let ni = n as i64;
    let mut eps_candidates: Vec<Rat> = Vec::new();
    if inner {
        eps_candidates.push(rat_pow(&v[0], n as u32) / rint(64 * 5 * ni * ni));
        eps_candidates.push(Rat::one() / (rint(1024 * ni * ni * ni) * rbig(BigInt::from(k_pow))));
        eps_candidates.push(
            Rat::one() / (rint(128 * 3 * 25) * rint(ni * (ni + 1)) * rbig(BigInt::from(k_pow2))),
        );
    } else {
        eps_candidates.push(rat_pow(&v[0], n as u32) / rint(128 * 5 * ni * ni));
        eps_candidates.push(Rat::one() / (rint(1024 * ni * ni * ni) * rbig(BigInt::from(k))));
        eps_candidates.push(
            Rat::one()
                / (rint(64 * 3 * 25)
                    * rint(ni * (ni + 1))
                    * rbig(BigInt::from(k) * BigInt::from(k))),
        );
    }
    for l in 1..n {
        let c_l = tables
            .c
            .get(&(l, m + 1))
            .cloned()
            .unwrap_or_else(|| panic!("C({l}, k^(2^{})) missing from the table", m + 1));
        eps_candidates.push(Rat::one() / (rint(8 * ni) * c_l));
        let g_l = tables
            .gamma
            .get(&(l, m + 1))
            .cloned()
            .unwrap_or_else(|| panic!("gamma({l}, k^(2^{})) missing", m + 1));
        eps_candidates.push(g_l / rint(128 * ni * ni * ni));
    }
    // base level values are fixed: gamma(1, .) = 1 - eps0, C(1, .) = 1
    let _ = eps0;
    let epsilon = eps_candidates
        .iter()
        .cloned()
        .min()
        .expect("candidate list nonempty");
    let gamma =
        rat_pow(&epsilon, (n - 1) as u32) / (rint(16) * (rbig(BigInt::from(k_pow)) - Rat::one()));

    // C candidates
    let eps_pow_n1 = rat_pow(&epsilon, (n - 1) as u32);
    let eps_pow_n2 = rat_pow(&epsilon, (n - 2) as u32);
    let mut c_candidates: Vec<Magnitude> = vec![
        Magnitude::Power {
            coeff: Rat::one(),
            base: n as u64,
            exponent: (rint(2) * &eps_pow_n1).recip(),
            addend: Rat::one(),
        },
        Magnitude::Exact(eps_pow_n1.recip() + Rat::one()),
        Magnitude::power(n as u64, rint(2 * ni * ni * ni) / &eps_pow_n2),
        Magnitude::Exact(rint(2) / &eps_pow_n2),
    ];
    let mut c1: Option<Magnitude> = None;
    let mut c2: Option<Magnitude> = None;
    for l in 1..n {
        let c_l = tables.c.get(&(l, m + 1)).cloned().expect("filled above");
        let cand1 = Magnitude::Power {
            coeff: rat_pow(&c_l, 4),
            base: n as u64,
            exponent: rint(4 * (ni * ni * ni + 2)) * &c_l,
            addend: Rat::zero(),
        };
        let cand2 = Magnitude::Exact(rint(4) * &c_l);
        c1 = Some(match c1 {
            None => cand1,
            Some(cur) => match cur.cmp_magnitude(&cand1) {
                std::cmp::Ordering::Greater => cand1,
                _ => cur,
            },
        });
        c2 = Some(match c2 {
            None => cand2,
            Some(cur) => match cur.cmp_magnitude(&cand2) {
                std::cmp::Ordering::Greater => cand2,
                _ => cur,
            },
        });
    }
    if let Some(c1) = c1 {
        c_candidates.push(c1);
    }
    if let Some(c2) = c2 {
        c_candidates.push(c2);
    }
    let c_min = c_candidates
        .iter()
        .cloned()
        .min_by(|a, b| a.cmp_magnitude(b))
        .expect("nonempty");
    let c_max = c_candidates
        .iter()
        .cloned()
        .max_by(|a, b| a.cmp_magnitude(b))
        .expect("nonempty");

    // table feedback uses the literal reading, which is always an exact
    // small rational (the 4 C(1,.) candidate caps it)
    let c_min_exact = c_min
        .to_exact()
        .ok_or_else(|| Error::Overflow("literal C reading is not exactly representable".into()))?;
    tables.gamma.insert((n, m), gamma.clone());
    tables.c.insert((n, m), c_min_exact);

    Ok(LevelTrace {
        n,
        m,
        k_power: k_pow,
        v,
        eps_candidates,
        epsilon,
        gamma,
        c_candidates,
        c_min,
        c_max,
    })
}

/// Runs the full recursion for `gamma(d, k)` and `C(d, k)` with base
/// values `gamma(1, .) = 1 - eps0` and `C(1, .) = 1`.
///
/// Exact rational arithmetic end to end; a pure function of its inputs.
pub fn gamma_c(d: usize, k: u64, eps0: &Rat) -> Result<ConstantsResult> {
    if d < 2 {
        return Err(Error::BadInput("recursion requires d >= 2".into()));
    }
    if k < 2 {
        return Err(Error::BadInput("recursion requires k >= 2".into()));
    }
    if eps0 <= &Rat::zero() || eps0 >= &Rat::one() {
        return Err(Error::BadInput(
            "base parameter eps0 must satisfy 0 < eps0 < 1".into(),
        ));
    }
    let mut tables = Tables {
        gamma: std::collections::BTreeMap::new(),
        c: std::collections::BTreeMap::new(),
    };
    for m in 0..=(d as u32) {
        tables.gamma.insert((1, m), Rat::one() - eps0);
        tables.c.insert((1, m), Rat::one());
    }
    let mut levels = Vec::new();
    // inner recursion: n = 2 .. d-1, m = 1 .. d-n (empty when d = 2)
    for n in 2..d {
        for m in 1..=(d - n) as u32 {
            levels.push(run_level(n, m, k, true, eps0, &mut tables)?);
        }
    }
    let final_level = run_level(d, 0, k, false, eps0, &mut tables)?;
    let result = ConstantsResult {
        d,
        k,
        eps0: eps0.clone(),
        gamma: final_level.gamma.clone(),
        c: final_level.c_max.clone(),
        c_literal_min: final_level.c_min.clone(),
        c_log2: final_level.c_max.log2(),
        epsilon: final_level.epsilon.clone(),
        v: final_level.v.clone(),
        levels: {
            levels.push(final_level);
            levels
        },
    };
    Ok(result)
}

/// `kappa(d,k) = min(gamma(d,k), 1/(64 k (d+1)))`, exact.
pub fn kappa(d: usize, k: u64, eps0: &Rat) -> Result<Rat> {
    let g = gamma_c(d, k, eps0)?.gamma;
    let alt = Rat::one() / rint(64 * k as i64 * (d as i64 + 1));
    Ok(g.min(alt))
}

/// Post-hoc verification that the returned epsilon satisfies every
/// inequality it was derived from. Returns the violated description on
/// failure.
pub fn verify_epsilon_constraints(res: &ConstantsResult) -> std::result::Result<(), String> {
    let level = res.levels.last().expect("final level present");
    let d = res.d as i64;
    let eps = &res.epsilon;
    // every explicit candidate bounds epsilon from above
    for (i, cand) in level.eps_candidates.iter().enumerate() {
        if eps > cand {
            return Err(format!("epsilon exceeds candidate #{i}"));
        }
    }
    // the v-ladder version: eps <= v_l^d / (2^7 * 5 * d^2) for every l
    for (l, vl) in level.v.iter().enumerate() {
        let bound = rat_pow(vl, res.d as u32) / rint(128 * 5 * d * d);
        if eps > &bound {
            return Err(format!("epsilon exceeds v_{} ladder bound", l + 1));
        }
    }
    // ordering of the v sequence, with v_d = 1/(128 d^2)
    for w in level.v.windows(2) {
        if w[0] > w[1] {
            return Err("v sequence is not nondecreasing".into());
        }
    }
    if level.v.last() != Some(&(Rat::one() / rint(128 * d * d))) {
        return Err("v_d != 1/(128 d^2)".into());
    }
    // gamma identity
    let expect =
        rat_pow(eps, (res.d - 1) as u32) / (rint(16) * (rbig(BigInt::from(res.k)) - Rat::one()));
    if res.gamma != expect {
        return Err("gamma != eps^(d-1)/(16(k-1))".into());
    }
    Ok(())
}

/// Log-scale form of the admissibility threshold `C * max(c, deg P)^C`:
/// returns a magnitude representing `log2` of the threshold,
/// `C * log2(x) + log2(C)` with `x = max(c, deg P)`. The coefficient
/// `log2(x)` enters as its exact `f64` rational; everything else stays
/// symbolic. Only the scale is meaningful: the threshold itself is far
/// beyond any representable strictness degree.
pub fn admissibility_threshold_log2(c: &Magnitude, max_c_deg: u64) -> Magnitude {
    let x = (max_c_deg.max(2) as f64).log2();
    let xr = crate::ratio::rat_from_f64(x);
    match c {
        Magnitude::Exact(r) => Magnitude::Exact(&xr * r + crate::ratio::rat_from_f64(rat_log2(r))),
        Magnitude::Power {
            coeff,
            base,
            exponent,
            ..
        } => Magnitude::Power {
            coeff: &xr * coeff,
            base: *base,
            exponent: exponent.clone(),
            addend: crate::ratio::rat_from_f64(
                rat_to_f64(exponent) * (*base as f64).log2() + rat_log2(coeff),
            ),
        },
    }
}

// ---------------------------------------------------------------------------
// Appendix-lemma routines on integer matrices
// ---------------------------------------------------------------------------

/// Exact check of `|A^-1| <= d^(2d-2) |A|^(d-1)` for unimodular `A`.
#[derive(Debug, Clone)]
pub struct InverseNormCheck {
    pub exact_norm: BigInt,
    pub bound: BigInt,
    pub ok: bool,
}

pub fn inverse_norm_check(a: &IMat) -> Result<InverseNormCheck> {
    let d = a.len();
    let inv =
        unimodular_inverse(a).ok_or_else(|| Error::BadInput("matrix is not unimodular".into()))?;
    let exact_norm = imat_max_norm(&inv);
    let bound = BigInt::from(d).pow(2 * d as u32 - 2) * imat_max_norm(a).pow(d as u32 - 1);
    let ok = exact_norm <= bound;
    Ok(InverseNormCheck {
        exact_norm,
        bound,
        ok,
    })
}

/// Completes a primitive integer vector `a` to a unimodular matrix whose
/// first column is `a` and whose max-norm obeys
/// `|A| <= 2^max(0, d-2) |a|`.
///
/// Construction: adapted basis for the sublattice spanned by
/// `(a, e_2, ..., e_d)` via a row-style Hermite reduction with the
/// size-reduction `0 <= alpha_ij < alpha_ii`; the output is not unique
/// and the contract is postcondition-only.
pub fn complete_primitive(a: &[BigInt]) -> Result<IMat> {
    let d = a.len();
    if d == 0 || a.iter().all(|x| x.is_zero()) {
        return Err(Error::BadInput("zero vector cannot be completed".into()));
    }
    let mut g = BigInt::zero();
    for x in a {
        g = num_integer::Integer::gcd(&g, x);
    }
    if g != BigInt::one() {
        return Err(Error::BadInput(format!(
            "vector is not primitive (gcd {g})"
        )));
    }
    // permute so the first coordinate is nonzero
    let pivot = a.iter().position(|x| !x.is_zero()).expect("nonzero");
    let mut perm: Vec<usize> = (0..d).collect();
    perm.swap(0, pivot);
    let a_perm: Vec<BigInt> = perm.iter().map(|&i| a[i].clone()).collect();

    // columns (a_perm, e_2, ..., e_d)
    let mut b: IMat = vec![vec![BigInt::zero(); d]; d];
    for i in 0..d {
        b[i][0] = a_perm[i].clone();
    }
    for j in 1..d {
        b[j][j] = BigInt::one();
    }
    // row-reduce to upper triangular T = U B with unimodular U
    let mut t = b;
    let mut u = crate::linalg::identity_imat(d);
    for col in 0..d {
        // clear below the diagonal by a Euclidean loop
        loop {
            if t[col][col].is_zero() {
                let swap_row = (col + 1..d).find(|&r| !t[r][col].is_zero());
                match swap_row {
                    Some(r) => {
                        t.swap(col, r);
                        u.swap(col, r);
                    }
                    None => break,
                }
            }
            let Some(r) = (col + 1..d).find(|&r| !t[r][col].is_zero()) else {
                break;
            };
            let q = num_integer::Integer::div_floor(&t[r][col], &t[col][col]);
            for c in 0..d {
                let v = &t[r][c] - &q * &t[col][c];
                t[r][c] = v;
                let w = &u[r][c] - &q * &u[col][c];
                u[r][c] = w;
            }
            if !t[r][col].is_zero() {
                t.swap(col, r);
                u.swap(col, r);
            }
        }
        if t[col][col].is_negative() {
            for c in 0..d {
                t[col][c] = -t[col][c].clone();
                u[col][c] = -u[col][c].clone();
            }
        }
        // size-reduce above the diagonal: 0 <= t[j][col] < t[col][col]
        for j in 0..col {
            let q = num_integer::Integer::div_floor(&t[j][col], &t[col][col]);
            if q.is_zero() {
                continue;
            }
            for c in 0..d {
                let v = &t[j][c] - &q * &t[col][c];
                t[j][c] = v;
                let w = &u[j][c] - &q * &u[col][c];
                u[j][c] = w;
            }
        }
    }
    let a_mat = unimodular_inverse(&u)
        .ok_or_else(|| Error::Overflow("reduction lost unimodularity".into()))?;
    // undo the coordinate permutation (rows)
    let mut out = vec![vec![BigInt::zero(); d]; d];
    for i in 0..d {
        out[perm[i]] = a_mat[i].clone();
    }
    // postconditions
    debug_assert_eq!(imat_det(&out).abs(), BigInt::one());
    debug_assert!((0..d).all(|i| out[i][0] == a[i]));
    Ok(out)
}
