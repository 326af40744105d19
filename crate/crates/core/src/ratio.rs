//! Exact rational scalars and the handful of guarded real-valued
//! conversions (square-root enclosures, base-2 logarithms) the rest of
//! the crate is allowed to use.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// The exact scalar used throughout the crate.
pub type Rat = BigRational;

/// `n` as a rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n / d` as a reduced rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"`, or a bare integer `"p"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::BadRational(s.to_string());
    match s.split_once('/') {
        Some((num, den)) => {
            let n: BigInt = num.trim().parse().map_err(|_| bad())?;
            let d: BigInt = den.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rat::from_integer(n))
        }
    }
}

/// Renders a rational as `"p/q"` (or `"p"` when integral).
pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses a comma-separated rational vector such as `"1/5,2/5"`.
pub fn parse_rat_vec(s: &str) -> Result<Vec<Rat>> {
    s.split(',').map(parse_rat).collect()
}

/// Best-effort `f64` value. Very large or very small rationals saturate
/// to `inf`/`0` like ordinary float conversion.
pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // both components out of f64 range; fall back to log arithmetic
        let l = rat_log2(r);
        if r.is_negative() {
            -l.exp2()
        } else {
            l.exp2()
        }
    })
}

fn bigint_log2(n: &BigInt) -> f64 {
    debug_assert!(n.is_positive());
    let bits = n.bits();
    if bits <= 52 {
        return (n.to_f64().unwrap()).log2();
    }
    // keep the top 52 bits as a mantissa
    let shift = bits - 52;
    let top: BigInt = n >> shift;
    top.to_f64().unwrap().log2() + shift as f64
}

/// `log2 |r|` for nonzero `r`, accurate to ~1e-14 even when `r` does not
/// fit in an `f64`.
pub fn rat_log2(r: &Rat) -> f64 {
    assert!(!r.is_zero(), "log2 of zero");
    bigint_log2(&r.numer().abs()) - bigint_log2(&r.denom().abs())
}

/// Fractional part in `[0, 1)`.
pub fn frac_mod1(r: &Rat) -> Rat {
    r - r.floor()
}

/// `r^k` for nonnegative integer `k`.
pub fn rat_pow(r: &Rat, k: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..k {
        acc *= r;
    }
    acc
}

fn biguint_of(r: &BigInt) -> BigUint {
    match r.sign() {
        Sign::Minus => panic!("negative value where nonnegative expected"),
        _ => r.magnitude().clone(),
    }
}

/// Rational enclosure `lo <= sqrt(r) <= hi` with `hi - lo <= 2^-bits * scale`.
///
/// Requires `r >= 0`. The enclosure is exact arithmetic end to end:
/// `sqrt(p/q) = sqrt(p*q)/q` and the integer square root is bracketed by
/// `isqrt` of the numerator scaled by `4^bits`.
pub fn sqrt_enclosure(r: &Rat, bits: u32) -> (Rat, Rat) {
    assert!(!r.is_negative(), "sqrt of negative rational");
    if r.is_zero() {
        return (Rat::zero(), Rat::zero());
    }
    let p = biguint_of(r.numer());
    let q = biguint_of(r.denom());
    let scaled = (&p * &q) << (2 * bits as u64);
    let s = scaled.sqrt(); // floor sqrt
    let den = BigInt::from(q) << (bits as u64);
    let lo = Rat::new(BigInt::from(s.clone()), den.clone());
    let hi = Rat::new(BigInt::from(s + BigUint::one()), den);
    (lo, hi)
}

/// `f64` midpoint of the sqrt enclosure, handy for reporting.
pub fn sqrt_approx(r: &Rat) -> f64 {
    rat_to_f64(r).sqrt()
}

/// Checked lcm on `u64`.
pub fn lcm_u64(a: u64, b: u64) -> Result<u64> {
    if a == 0 || b == 0 {
        return Ok(0);
    }
    let g = a.gcd(&b);
    (a / g)
        .checked_mul(b)
        .ok_or_else(|| Error::Overflow(format!("lcm({a}, {b})")))
}

/// Exact conversion of an `f64` (finite) to a rational.
pub fn rat_from_f64(x: f64) -> Rat {
    Rat::from_float(x).expect("finite float")
}
