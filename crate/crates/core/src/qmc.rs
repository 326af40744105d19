//! Deterministic quasi-Monte-Carlo point streams and maps into
//! simplices.
//!
//! The stream is a Halton sequence (one prime base per coordinate) with
//! a seed acting as a start offset, so reruns with the same
//! configuration are byte-identical and block sums can be fixed-order.

const BASES: [u64; 6] = [2, 3, 5, 7, 11, 13];

/// Van der Corput radical inverse of `n` in the given base.
fn radical_inverse(mut n: u64, base: u64) -> f64 {
    let mut inv = 0.0;
    let mut denom = 1.0;
    let b = base as f64;
    while n > 0 {
        denom *= b;
        inv += (n % base) as f64 / denom;
        n /= base;
    }
    inv
}

/// Seedable Halton stream in `[0,1)^d`.
#[derive(Debug, Clone)]
pub struct HaltonStream {
    dim: usize,
    index: u64,
}

impl HaltonStream {
    /// `seed` offsets the start index (a leap of 64 per seed unit keeps
    /// distinct seeds well separated without breaking determinism).
    pub fn new(dim: usize, seed: u64) -> Self {
        assert!(dim >= 1 && dim <= BASES.len(), "stream supports d <= 6");
        HaltonStream {
            dim,
            index: 1 + seed.wrapping_mul(64),
        }
    }

    pub fn next_point(&mut self) -> Vec<f64> {
        let n = self.index;
        self.index += 1;
        (0..self.dim)
            .map(|i| radical_inverse(n, BASES[i]))
            .collect()
    }
}

/// Maps a unit-square point into the triangle `(a, b, c)` by the
/// measure-preserving folding map (two affine pieces).
pub fn square_to_triangle(u: &[f64], a: &[f64], b: &[f64], c: &[f64]) -> Vec<f64> {
    let (mut s, mut t) = (u[0], u[1]);
    if s + t > 1.0 {
        s = 1.0 - s;
        t = 1.0 - t;
    }
    (0..a.len())
        .map(|i| a[i] + s * (b[i] - a[i]) + t * (c[i] - a[i]))
        .collect()
}

/// Maps a unit-cube point into the simplex spanned by `verts`
/// (`d+1` vertices in `R^d`) via sorted-coordinate barycentric weights;
/// measure preserving for uniform inputs.
pub fn cube_to_simplex(u: &[f64], verts: &[Vec<f64>]) -> Vec<f64> {
    let d = u.len();
    debug_assert_eq!(verts.len(), d + 1);
    let mut keys: Vec<f64> = u.to_vec();
    keys.sort_by(|a, b| a.partial_cmp(b).unwrap());
    // barycentric weights are the gaps of the sorted sample
    let mut weights = Vec::with_capacity(d + 1);
    let mut prev = 0.0;
    for &k in &keys {
        weights.push(k - prev);
        prev = k;
    }
    weights.push(1.0 - prev);
    let dim = verts[0].len();
    (0..dim)
        .map(|i| {
            weights
                .iter()
                .zip(verts)
                .map(|(w, v)| w * v[i])
                .sum::<f64>()
        })
        .collect()
}
