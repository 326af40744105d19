//! Exact two-sided box discrepancy, isotropic-discrepancy bounds and the
//! Galois-orbit discrepancy bound shape.
//!
//! The supremum over half-open boxes is computed through the closed /
//! open double count: for every candidate box with corners on the
//! coordinate grid, the overfilled direction uses the closed count (the
//! limit of boxes whose upper faces have just crossed the points) and
//! the underfilled direction uses the strict-interior count. This is
//! where naive implementations go wrong: the discrepancy of a single
//! point must be 1, not `1 - vol`.
//!
//! Exact mode runs in scaled integer arithmetic (one common denominator
//! per axis), with an `i128` fast path and a big-integer fallback. The
//! planar sweep is `O(|Y|^2 |X|)` with incremental band maintenance.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::polytope::Polytope;
use crate::ratio::{rat_from_f64, rat_to_f64, Rat};
use crate::{Error, Result};

/// Exact mode is available for `d <= 3` and `n` up to this cap; at the
/// cap a planar instance takes a few seconds.
pub const EXACT_MODE_CAP: usize = 2500;

/// A finite ordered list of points in `[0,1)^d`.
#[derive(Debug, Clone)]
pub struct PointSet {
    dim: usize,
    points: Vec<Vec<Rat>>,
    coords_exact: bool,
}

impl PointSet {
    /// Point set from exact rational coordinates; every coordinate must
    /// lie in `[0,1)`.
    pub fn from_rational(dim: usize, points: Vec<Vec<Rat>>) -> Result<Self> {
        for p in &points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.len(),
                });
            }
            for x in p {
                if x.is_negative() || x >= &Rat::one() {
                    return Err(Error::BadInput(format!(
                        "coordinate {} outside [0,1)",
                        crate::ratio::fmt_rat(x)
                    )));
                }
            }
        }
        Ok(PointSet {
            dim,
            points,
            coords_exact: true,
        })
    }

    /// Point set from float coordinates (converted exactly; flagged).
    pub fn from_floats(dim: usize, points: &[Vec<f64>]) -> Result<Self> {
        let rational: Vec<Vec<Rat>> = points
            .iter()
            .map(|p| p.iter().map(|&x| rat_from_f64(x)).collect())
            .collect();
        let mut ps = Self::from_rational(dim, rational)?;
        ps.coords_exact = false;
        Ok(ps)
    }

    /// Equispaced points `i/n` on `[0,1)`.
    pub fn equispaced(n: usize) -> Self {
        let points = (0..n)
            .map(|i| vec![Rat::new(BigInt::from(i), BigInt::from(n))])
            .collect();
        PointSet {
            dim: 1,
            points,
            coords_exact: true,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<Rat>] {
        &self.points
    }

    pub fn coords_exact(&self) -> bool {
        self.coords_exact
    }

    pub fn points_f64(&self) -> Vec<Vec<f64>> {
        self.points
            .iter()
            .map(|p| p.iter().map(rat_to_f64).collect())
            .collect()
    }
}

/// The witness box attaining (as a limit) the reported deviation.
#[derive(Debug, Clone)]
pub struct WitnessBox {
    pub lower: Vec<Rat>,
    pub upper: Vec<Rat>,
    /// True when the deviation is attained by the closed box (overfill
    /// limit); false for the open box (underfill limit).
    pub closed: bool,
}

#[derive(Debug, Clone)]
pub struct DiscrepancyReport {
    /// Exact value when exact mode ran.
    pub d_exact: Option<Rat>,
    pub d: f64,
    pub witness: WitnessBox,
    pub j_lower: f64,
    pub j_upper: f64,
    /// False when the value is a randomized lower-bound estimate.
    pub exact: bool,
}

/// Two-sided box discrepancy. Exact for `d <= 3`, `n <= EXACT_MODE_CAP`;
/// beyond that a flagged randomized estimate is returned.
pub fn box_discrepancy(s: &PointSet) -> Result<DiscrepancyReport> {
    if s.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let exact_ok = s.dim <= 3 && s.len() <= EXACT_MODE_CAP;
    let (d_exact, witness, exact) = if exact_ok {
        let (v, w) = exact_discrepancy(s);
        (Some(v), w, true)
    } else {
        let w = estimate_discrepancy(s, 20_000, 0);
        (None, w, false)
    };
    let d = match &d_exact {
        Some(v) => rat_to_f64(v),
        None => witness_deviation(s, &witness),
    };
    let (j_lower, j_upper) = isotropic_from_d(s, d);
    Ok(DiscrepancyReport {
        d_exact,
        d,
        witness,
        j_lower,
        j_upper,
        exact,
    })
}

/// Strict-mode variant that errors instead of estimating.
pub fn box_discrepancy_exact(s: &PointSet) -> Result<DiscrepancyReport> {
    if s.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    if s.dim > 3 || s.len() > EXACT_MODE_CAP {
        return Err(Error::ExactModeLimit {
            d: s.dim,
            n: s.len(),
            cap: EXACT_MODE_CAP,
        });
    }
    box_discrepancy(s)
}

/// `(lower, upper)` bounds on the isotropic discrepancy `J`:
/// `lower = max(D, best deviation over a randomized convex family)`,
/// `upper = (4 d sqrt(d) + 1) D^(1/d)`. `J` itself is never reported as a
/// point value.
pub fn isotropic_bounds(s: &PointSet) -> Result<(f64, f64)> {
    let report = box_discrepancy(s)?;
    Ok((report.j_lower, report.j_upper))
}

fn isotropic_from_d(s: &PointSet, d_value: f64) -> (f64, f64) {
    let d = s.dim as f64;
    let upper = ((4.0 * d * d.sqrt() + 1.0) * d_value.powf(1.0 / d)).min(1.0);
    let mut lower = d_value;
    if s.dim >= 2 && s.len() <= 4000 {
        lower = lower.max(convex_family_lower_bound(s, 200, 1));
    }
    (lower, upper)
}

/// The bound shape of the Galois-orbit discrepancy estimate,
/// `(log 2 delta)^(d-1) * log log(3 delta) / delta^(1/2)`, WITHOUT the
/// implicit dimension constant. Useful only for trend comparison, never
/// as a certified bound.
pub fn orbit_discrepancy_shape(delta: u64, d: usize) -> f64 {
    assert!(delta >= 1);
    let delta = delta as f64;
    (2.0 * delta).ln().powi(d as i32 - 1) * (3.0 * delta).ln().ln() / delta.sqrt()
}

// ---------------------------------------------------------------------------
// Exact sweep
// ---------------------------------------------------------------------------

/// Scaled integer arithmetic for the sweep: `i128` fast path, `BigInt`
/// fallback for wild denominators.
trait SweepInt:
    Clone
    + Ord
    + std::ops::Add<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Mul<Output = Self>
{
    fn from_i64(v: i64) -> Self;
    fn from_bigint(b: &BigInt) -> Self;
    fn into_bigint(self) -> BigInt;
}
impl SweepInt for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn from_bigint(b: &BigInt) -> Self {
        b.to_i128().expect("fits by the bit-length check")
    }
    fn into_bigint(self) -> BigInt {
        BigInt::from(self)
    }
}
impl SweepInt for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn from_bigint(b: &BigInt) -> Self {
        b.clone()
    }
    fn into_bigint(self) -> BigInt {
        self
    }
}

struct Axis {
    /// Grid index of each point's coordinate.
    point_grid_idx: Vec<usize>,
    /// Sorted unique scaled grid values including 0 and the denominator.
    grid: Vec<BigInt>,
    /// Common denominator of the axis.
    q: BigInt,
}

fn build_axis(s: &PointSet, axis: usize) -> Axis {
    let mut q = BigInt::one();
    for p in &s.points {
        q = q.lcm(p[axis].denom());
    }
    let scaled: Vec<BigInt> = s
        .points
        .iter()
        .map(|p| p[axis].numer() * (&q / p[axis].denom()))
        .collect();
    let mut grid: Vec<BigInt> = scaled.clone();
    grid.push(BigInt::zero());
    grid.push(q.clone());
    grid.sort();
    grid.dedup();
    let point_grid_idx = scaled
        .iter()
        .map(|v| grid.binary_search(v).expect("own value"))
        .collect();
    Axis {
        point_grid_idx,
        grid,
        q,
    }
}

fn exact_discrepancy(s: &PointSet) -> (Rat, WitnessBox) {
    let axes: Vec<Axis> = (0..s.dim).map(|i| build_axis(s, i)).collect();
    let n = BigInt::from(s.len());
    let mut total_scale = n.clone();
    for a in &axes {
        total_scale *= &a.q;
    }
    let (best, widx) = if total_scale.bits() <= 120 {
        sweep_entry::<i128>(s, &axes)
    } else {
        sweep_entry::<BigInt>(s, &axes)
    };
    let value = Rat::new(best, total_scale);
    let witness = WitnessBox {
        lower: (0..s.dim)
            .map(|i| Rat::new(axes[i].grid[widx.lo[i]].clone(), axes[i].q.clone()))
            .collect(),
        upper: (0..s.dim)
            .map(|i| Rat::new(axes[i].grid[widx.hi[i]].clone(), axes[i].q.clone()))
            .collect(),
        closed: widx.closed,
    };
    (value, witness)
}

#[derive(Clone)]
struct WitnessIdx {
    lo: Vec<usize>,
    hi: Vec<usize>,
    closed: bool,
}

/// Overfill scan over one axis: maximizes
/// `count_closed[a..=b] * qscale - nw * (grid[b] - grid[a])` over grid
/// indices `a <= b` (degenerate `a == b` boxes included). `cells[g]` is
/// the number of band points whose coordinate sits at grid index `g`.
fn scan_over<T: SweepInt>(
    cells: &[i64],
    grid: &[T],
    qscale: &T,
    nw: &T,
    mut report: impl FnMut(T, usize, usize),
) {
    let mut lt: i64 = 0;
    let mut best_a: Option<(T, usize)> = None;
    let mut best: Option<(T, usize, usize)> = None;
    for b in 0..grid.len() {
        let a_term = nw.clone() * grid[b].clone() - T::from_i64(lt) * qscale.clone();
        if best_a.as_ref().is_none_or(|(v, _)| a_term > *v) {
            best_a = Some((a_term, b));
        }
        let le = lt + cells[b];
        let (a_val, a_idx) = best_a.as_ref().unwrap();
        let dev = T::from_i64(le) * qscale.clone() - nw.clone() * grid[b].clone() + a_val.clone();
        if best.as_ref().is_none_or(|(v, _, _)| dev > *v) {
            best = Some((dev, *a_idx, b));
        }
        lt = le;
    }
    if let Some((dev, a, b)) = best {
        report(dev, a, b);
    }
}

/// Underfill scan: maximizes
/// `nw * (grid[b] - grid[a]) - count_open(a..b) * qscale` over `a < b`,
/// with strict counting on the axis.
fn scan_under<T: SweepInt>(
    cells: &[i64],
    grid: &[T],
    qscale: &T,
    nw: &T,
    mut report: impl FnMut(T, usize, usize),
) {
    let mut lt: i64 = 0;
    let mut best_a: Option<(T, usize)> = None;
    let mut best: Option<(T, usize, usize)> = None;
    for b in 0..grid.len() {
        let b_term = nw.clone() * grid[b].clone() - T::from_i64(lt) * qscale.clone();
        if let Some((a_val, a_idx)) = best_a.as_ref() {
            let dev = b_term + a_val.clone();
            if best.as_ref().is_none_or(|(v, _, _)| dev > *v) {
                best = Some((dev, *a_idx, b));
            }
        }
        let le = lt + cells[b];
        let a_term = T::from_i64(le) * qscale.clone() - nw.clone() * grid[b].clone();
        if best_a.as_ref().is_none_or(|(v, _)| a_term > *v) {
            best_a = Some((a_term, b));
        }
        lt = le;
    }
    if let Some((dev, a, b)) = best {
        report(dev, a, b);
    }
}

fn witness_key(w: &WitnessIdx) -> (Vec<usize>, Vec<usize>, u8) {
    (w.lo.clone(), w.hi.clone(), if w.closed { 0 } else { 1 })
}

/// Deterministic max-reduction: larger deviation wins; ties go to the
/// lexicographically smallest witness box.
fn prefer<T: Ord>(cur: &mut Option<(T, WitnessIdx)>, dev: T, w: WitnessIdx) {
    let replace = match cur.as_ref() {
        None => true,
        Some((cd, cw)) => match dev.cmp(cd) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Equal => witness_key(&w) < witness_key(cw),
        },
    };
    if replace {
        *cur = Some((dev, w));
    }
}

fn merge_best<T: Ord>(
    a: Option<(T, WitnessIdx)>,
    b: Option<(T, WitnessIdx)>,
) -> Option<(T, WitnessIdx)> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => {
            let mut cur = Some(x);
            prefer(&mut cur, y.0, y.1);
            cur
        }
    }
}

fn sweep_entry<T: SweepInt + Send + Sync>(s: &PointSet, axes: &[Axis]) -> (BigInt, WitnessIdx) {
    let n: T = T::from_i64(s.len() as i64);
    let grids: Vec<Vec<T>> = axes
        .iter()
        .map(|a| a.grid.iter().map(|v| T::from_bigint(v)).collect())
        .collect();
    let qs: Vec<T> = axes.iter().map(|a| T::from_bigint(&a.q)).collect();
    let mut best: Option<(T, WitnessIdx)> = None;
    match s.dim {
        1 => {
            let mut cells = vec![0i64; grids[0].len()];
            for &gi in &axes[0].point_grid_idx {
                cells[gi] += 1;
            }
            scan_over(&cells, &grids[0], &qs[0], &n, |dev, a, b| {
                prefer(
                    &mut best,
                    dev,
                    WitnessIdx {
                        lo: vec![a],
                        hi: vec![b],
                        closed: true,
                    },
                );
            });
            scan_under(&cells, &grids[0], &qs[0], &n, |dev, a, b| {
                prefer(
                    &mut best,
                    dev,
                    WitnessIdx {
                        lo: vec![a],
                        hi: vec![b],
                        closed: false,
                    },
                );
            });
        }
        2 => {
            let all: Vec<usize> = (0..s.len()).collect();
            best = sweep_planar(
                axes,
                &grids,
                &qs,
                &all,
                &all,
                &n,
                &T::from_i64(1),
                &T::from_i64(1),
                &[],
            );
        }
        3 => {
            let gz = &grids[2];
            for k in 0..gz.len() {
                for l in k..gz.len() {
                    let wz = gz[l].clone() - gz[k].clone();
                    let closed_idx: Vec<usize> = (0..s.len())
                        .filter(|&p| {
                            let g = axes[2].point_grid_idx[p];
                            g >= k && g <= l
                        })
                        .collect();
                    let open_idx: Vec<usize> = (0..s.len())
                        .filter(|&p| {
                            let g = axes[2].point_grid_idx[p];
                            g > k && g < l
                        })
                        .collect();
                    let local = sweep_planar(
                        axes,
                        &grids,
                        &qs,
                        &closed_idx,
                        &open_idx,
                        &n,
                        &wz,
                        &qs[2],
                        &[k, l],
                    );
                    best = merge_best(best, local);
                }
            }
        }
        _ => unreachable!("exact mode is capped at d <= 3"),
    }
    let (dev, w) = best.expect("at least the degenerate box reports");
    (dev.into_bigint(), w)
}

/// Planar sweep over y-bands with incremental cell maintenance; rows are
/// processed in parallel and merged by the deterministic reduction. The
/// closed band feeds overfill, the open band underfill. Deviations come
/// out at scale `n * qx * qy * zscale` with volumes weighted by `wz`;
/// `z_window` carries the outer band indices into the witness.
#[allow(clippy::too_many_arguments)]
fn sweep_planar<T: SweepInt + Send + Sync>(
    axes: &[Axis],
    grids: &[Vec<T>],
    qs: &[T],
    closed_subset: &[usize],
    open_subset: &[usize],
    n: &T,
    wz: &T,
    zscale: &T,
    z_window: &[usize],
) -> Option<(T, WitnessIdx)> {
    use rayon::prelude::*;
    let gx = &grids[0];
    let gy = &grids[1];
    let qscale = qs[0].clone() * qs[1].clone() * zscale.clone();
    let bucket = |subset: &[usize]| -> Vec<Vec<usize>> {
        let mut rows = vec![Vec::new(); gy.len()];
        for &p in subset {
            rows[axes[1].point_grid_idx[p]].push(p);
        }
        rows
    };
    let rows_closed = bucket(closed_subset);
    let rows_open = bucket(open_subset);
    let witness = |xlo: usize, xhi: usize, i: usize, j: usize, closed: bool| -> WitnessIdx {
        let mut lo = vec![xlo, i];
        let mut hi = vec![xhi, j];
        if let [zk, zl] = z_window {
            lo.push(*zk);
            hi.push(*zl);
        }
        WitnessIdx { lo, hi, closed }
    };
    (0..gy.len())
        .into_par_iter()
        .map(|i| {
            let mut local: Option<(T, WitnessIdx)> = None;
            let mut cells_closed = vec![0i64; gx.len()];
            let mut cells_open = vec![0i64; gx.len()];
            for j in i..gy.len() {
                for &p in &rows_closed[j] {
                    cells_closed[axes[0].point_grid_idx[p]] += 1;
                }
                if j > i + 1 {
                    for &p in &rows_open[j - 1] {
                        cells_open[axes[0].point_grid_idx[p]] += 1;
                    }
                }
                let wy = gy[j].clone() - gy[i].clone();
                let nw = n.clone() * wy * wz.clone();
                scan_over(&cells_closed, gx, &qscale, &nw, |dev, a, b| {
                    prefer(&mut local, dev, witness(a, b, i, j, true));
                });
                if j > i {
                    scan_under(&cells_open, gx, &qscale, &nw, |dev, a, b| {
                        prefer(&mut local, dev, witness(a, b, i, j, false));
                    });
                }
            }
            local
        })
        .reduce(|| None, merge_best)
}

fn witness_deviation(s: &PointSet, w: &WitnessBox) -> f64 {
    let n = s.len() as f64;
    let mut vol = 1.0;
    for i in 0..s.dim {
        vol *= rat_to_f64(&w.upper[i]) - rat_to_f64(&w.lower[i]);
    }
    let count = s
        .points
        .iter()
        .filter(|p| {
            (0..s.dim).all(|i| {
                if w.closed {
                    p[i] >= w.lower[i] && p[i] <= w.upper[i]
                } else {
                    p[i] > w.lower[i] && p[i] < w.upper[i]
                }
            })
        })
        .count() as f64;
    if w.closed {
        count / n - vol
    } else {
        vol - count / n
    }
}

/// Randomized box-sampling lower bound on the discrepancy: the best
/// deviation over `samples` random candidate boxes. Always a valid
/// lower bound for `D`; it is also the fallback value beyond the exact
/// limits.
pub fn sampled_lower_bound(s: &PointSet, samples: usize, seed: u64) -> f64 {
    let witness = estimate_discrepancy(s, samples, seed);
    witness_deviation(s, &witness).max(0.0)
}

/// Randomized lower-bound witness search used beyond the exact limits.
fn estimate_discrepancy(s: &PointSet, samples: usize, seed: u64) -> WitnessBox {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = s.dim;
    let pts = s.points_f64();
    let n = s.len() as f64;
    let mut best = f64::MIN;
    let mut best_box = WitnessBox {
        lower: vec![Rat::zero(); d],
        upper: vec![Rat::one(); d],
        closed: true,
    };
    for _ in 0..samples {
        let mut lo = vec![0.0; d];
        let mut hi = vec![0.0; d];
        for i in 0..d {
            let pick = |rng: &mut ChaCha8Rng| -> f64 {
                match rng.random_range(0..pts.len() + 2) {
                    0 => 0.0,
                    1 => 1.0,
                    k => pts[k - 2][i],
                }
            };
            let (a, b) = (pick(&mut rng), pick(&mut rng));
            lo[i] = a.min(b);
            hi[i] = a.max(b);
        }
        let mut vol = 1.0;
        for i in 0..d {
            vol *= hi[i] - lo[i];
        }
        let closed = pts
            .iter()
            .filter(|p| (0..d).all(|i| p[i] >= lo[i] && p[i] <= hi[i]))
            .count() as f64;
        let open = pts
            .iter()
            .filter(|p| (0..d).all(|i| p[i] > lo[i] && p[i] < hi[i]))
            .count() as f64;
        for (dev, is_closed) in [(closed / n - vol, true), (vol - open / n, false)] {
            if dev > best {
                best = dev;
                best_box = WitnessBox {
                    lower: lo.iter().map(|&x| rat_from_f64(x)).collect(),
                    upper: hi.iter().map(|&x| rat_from_f64(x)).collect(),
                    closed: is_closed,
                };
            }
        }
    }
    best_box
}

/// Best deviation over a deterministic randomized family of convex
/// subsets: halfspace clips of the unit box and hulls of point subsets.
/// Always a valid lower bound for the isotropic discrepancy.
fn convex_family_lower_bound(s: &PointSet, tries: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = s.dim;
    let n = s.len() as f64;
    let mut best = 0.0f64;
    let mut eval = |poly: &Polytope| {
        let vol = rat_to_f64(&poly.volume());
        let closed = s.points.iter().filter(|p| poly.contains(p)).count() as f64;
        let open = s
            .points
            .iter()
            .filter(|p| poly.strictly_contains(p))
            .count() as f64;
        best = best.max(closed / n - vol).max(vol - open / n);
    };
    for t in 0..tries {
        if t % 2 == 0 {
            if let Some(poly) = random_halfspace_clip(d, &mut rng) {
                eval(&poly);
            }
        } else {
            let k = rng.random_range(d + 1..=d + 5);
            let subset: Vec<Vec<Rat>> = (0..k)
                .map(|_| {
                    let idx = rng.random_range(0..s.points.len());
                    s.points[idx].clone()
                })
                .collect();
            if let Ok(poly) = Polytope::from_vertices(&subset) {
                if poly.is_full_dimensional() {
                    eval(&poly);
                }
            }
        }
    }
    best
}

/// Clips the unit box by a random rational halfspace: the hull of the
/// surviving corners and the edge intersections.
fn random_halfspace_clip(d: usize, rng: &mut ChaCha8Rng) -> Option<Polytope> {
    let denom = 32i64;
    let normal: Vec<Rat> = (0..d)
        .map(|_| {
            Rat::new(
                BigInt::from(rng.random_range(-denom..=denom)),
                BigInt::from(denom),
            )
        })
        .collect();
    if normal.iter().all(|x| x.is_zero()) {
        return None;
    }
    let offset = Rat::new(
        BigInt::from(rng.random_range(-denom..=denom)),
        BigInt::from(denom),
    );
    let corners: Vec<Vec<Rat>> = (0..1u32 << d)
        .map(|mask| {
            (0..d)
                .map(|i| {
                    if mask >> i & 1 == 1 {
                        Rat::one()
                    } else {
                        Rat::zero()
                    }
                })
                .collect()
        })
        .collect();
    let side =
        |p: &[Rat]| -> Rat { normal.iter().zip(p).map(|(a, b)| a * b).sum::<Rat>() - &offset };
    let mut pts: Vec<Vec<Rat>> = corners
        .iter()
        .filter(|c| !side(c).is_positive())
        .cloned()
        .collect();
    for (i, a) in corners.iter().enumerate() {
        for b in corners.iter().skip(i + 1) {
            let diff: Vec<usize> = (0..d).filter(|&k| a[k] != b[k]).collect();
            if diff.len() != 1 {
                continue;
            }
            let (sa, sb) = (side(a), side(b));
            if sa.is_positive() == sb.is_positive() {
                continue;
            }
            let t = &sa / (&sa - &sb);
            let p: Vec<Rat> = (0..d).map(|k| &a[k] + (&b[k] - &a[k]) * &t).collect();
            pts.push(p);
        }
    }
    if pts.len() <= d {
        return None;
    }
    Polytope::from_vertices(&pts)
        .ok()
        .filter(|p| p.is_full_dimensional())
}

/// Independent reference implementations kept deliberately naive; the
/// test suites compare the production sweep against these.
pub mod oracle {
    use super::*;

    /// `O(n^(2d+1))` box discrepancy: every grid box, both one-sided
    /// counts, nothing shared or incremental.
    pub fn naive_box_discrepancy(s: &PointSet) -> Rat {
        let d = s.dim();
        let n = BigInt::from(s.len());
        let mut grids: Vec<Vec<Rat>> = Vec::new();
        for i in 0..d {
            let mut g: Vec<Rat> = s.points().iter().map(|p| p[i].clone()).collect();
            g.push(Rat::zero());
            g.push(Rat::one());
            g.sort();
            g.dedup();
            grids.push(g);
        }
        let mut best = Rat::zero();
        let mut lo_idx = vec![0usize; d];
        let mut hi_idx = vec![0usize; d];
        loop {
            if (0..d).all(|i| grids[i][lo_idx[i]] <= grids[i][hi_idx[i]]) {
                let mut vol = Rat::one();
                for i in 0..d {
                    vol *= &grids[i][hi_idx[i]] - &grids[i][lo_idx[i]];
                }
                let closed = s
                    .points()
                    .iter()
                    .filter(|p| {
                        (0..d).all(|i| p[i] >= grids[i][lo_idx[i]] && p[i] <= grids[i][hi_idx[i]])
                    })
                    .count();
                let open = s
                    .points()
                    .iter()
                    .filter(|p| {
                        (0..d).all(|i| p[i] > grids[i][lo_idx[i]] && p[i] < grids[i][hi_idx[i]])
                    })
                    .count();
                let over = Rat::new(BigInt::from(closed), n.clone()) - vol.clone();
                let under = vol - Rat::new(BigInt::from(open), n.clone());
                if over > best {
                    best = over;
                }
                if under > best {
                    best = under;
                }
            }
            let mut k = 0;
            loop {
                if k == 2 * d {
                    return best;
                }
                let len = grids[k % d].len();
                let slot = if k < d {
                    &mut lo_idx[k]
                } else {
                    &mut hi_idx[k - d]
                };
                *slot += 1;
                if *slot < len {
                    break;
                }
                *slot = 0;
                k += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat;

    #[test]
    fn equispaced_is_one_over_n() {
        for n in [1usize, 2, 5, 8, 13] {
            let s = PointSet::equispaced(n);
            let rep = box_discrepancy(&s).unwrap();
            assert_eq!(rep.d_exact.as_ref().unwrap(), &rat(1, n as i64));
        }
    }

    #[test]
    fn single_point_has_discrepancy_one() {
        let s = PointSet::from_rational(1, vec![vec![rat(3, 7)]]).unwrap();
        let rep = box_discrepancy(&s).unwrap();
        assert_eq!(rep.d_exact.unwrap(), rat(1, 1));
        let s = PointSet::from_rational(2, vec![vec![rat(1, 4), rat(3, 4)]]).unwrap();
        let rep = box_discrepancy(&s).unwrap();
        assert_eq!(rep.d_exact.unwrap(), rat(1, 1));
        assert!((rep.j_lower - 1.0).abs() < 1e-12);
    }

    #[test]
    fn quarter_three_quarter() {
        let s = PointSet::from_rational(1, vec![vec![rat(1, 4)], vec![rat(3, 4)]]).unwrap();
        let rep = box_discrepancy(&s).unwrap();
        assert_eq!(rep.d_exact.unwrap(), rat(1, 2));
    }

    #[test]
    fn matches_naive_oracle_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for d in 1..=2usize {
            for n in [1usize, 2, 3, 5, 8] {
                let pts: Vec<Vec<Rat>> = (0..n)
                    .map(|_| (0..d).map(|_| rat(rng.random_range(0..16), 16)).collect())
                    .collect();
                let s = PointSet::from_rational(d, pts).unwrap();
                let rep = box_discrepancy(&s).unwrap();
                let naive = oracle::naive_box_discrepancy(&s);
                assert_eq!(rep.d_exact.unwrap(), naive, "d={d} n={n}");
            }
        }
    }

    #[test]
    fn exact_3d_small() {
        let pts = vec![
            vec![rat(1, 4), rat(1, 2), rat(1, 8)],
            vec![rat(3, 4), rat(1, 4), rat(5, 8)],
            vec![rat(1, 2), rat(7, 8), rat(3, 8)],
            vec![rat(1, 8), rat(1, 8), rat(7, 8)],
        ];
        let s = PointSet::from_rational(3, pts).unwrap();
        let rep = box_discrepancy(&s).unwrap();
        let naive = oracle::naive_box_discrepancy(&s);
        assert_eq!(rep.d_exact.unwrap(), naive);
    }

    #[test]
    fn exact_3d_matches_oracle_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in [2usize, 5, 7, 9] {
            for _ in 0..2 {
                let pts: Vec<Vec<Rat>> = (0..n)
                    .map(|_| (0..3).map(|_| rat(rng.random_range(0..10), 10)).collect())
                    .collect();
                let s = PointSet::from_rational(3, pts).unwrap();
                let rep = box_discrepancy(&s).unwrap();
                let naive = oracle::naive_box_discrepancy(&s);
                assert_eq!(rep.d_exact.unwrap(), naive, "n={n}");
            }
        }
    }

    #[test]
    fn permutation_invariance() {
        let pts = vec![
            vec![rat(1, 8), rat(5, 8)],
            vec![rat(3, 8), rat(1, 8)],
            vec![rat(7, 8), rat(3, 8)],
        ];
        let s1 = PointSet::from_rational(2, pts.clone()).unwrap();
        let mut rev = pts;
        rev.reverse();
        let s2 = PointSet::from_rational(2, rev).unwrap();
        assert_eq!(
            box_discrepancy(&s1).unwrap().d_exact,
            box_discrepancy(&s2).unwrap().d_exact
        );
    }

    #[test]
    fn duplication_invariance() {
        let pts = vec![vec![rat(1, 8), rat(5, 8)], vec![rat(3, 8), rat(1, 8)]];
        let doubled: Vec<Vec<Rat>> = pts.iter().chain(pts.iter()).cloned().collect();
        let s1 = PointSet::from_rational(2, pts).unwrap();
        let s2 = PointSet::from_rational(2, doubled).unwrap();
        assert_eq!(
            box_discrepancy(&s1).unwrap().d_exact,
            box_discrepancy(&s2).unwrap().d_exact
        );
    }

    #[test]
    fn float_coords_use_exact_sweep() {
        let s = PointSet::from_floats(2, &[vec![0.25, 0.75], vec![0.5, 0.125]]).unwrap();
        assert!(!s.coords_exact());
        let rep = box_discrepancy(&s).unwrap();
        assert!(rep.exact);
        assert_eq!(rep.d_exact.unwrap(), oracle::naive_box_discrepancy(&s));
    }

    #[test]
    fn shape_values() {
        assert!((orbit_discrepancy_shape(1, 1) - 3f64.ln().ln()).abs() < 1e-12);
        let v = orbit_discrepancy_shape(100, 2);
        assert!((v - 200f64.ln() * 300f64.ln().ln() / 10.0).abs() < 1e-12);
        assert!(orbit_discrepancy_shape(1_000_000, 2) < orbit_discrepancy_shape(1000, 2));
    }

    #[test]
    fn rejects_out_of_range_coords() {
        assert!(PointSet::from_rational(1, vec![vec![rat(1, 1)]]).is_err());
        assert!(PointSet::from_rational(1, vec![vec![rat(-1, 2)]]).is_err());
    }

    #[test]
    fn sampled_lower_bound_never_exceeds_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(57);
        for n in [3usize, 8, 17] {
            let pts: Vec<Vec<Rat>> = (0..n)
                .map(|_| (0..2).map(|_| rat(rng.random_range(0..40), 40)).collect())
                .collect();
            let s = PointSet::from_rational(2, pts).unwrap();
            let exact = box_discrepancy(&s).unwrap().d;
            let sampled = sampled_lower_bound(&s, 4000, 3);
            assert!(sampled <= exact + 1e-12, "{sampled} > {exact}");
            assert!((0.0..=1.0).contains(&exact));
        }
    }

    #[test]
    fn witness_box_reproduces_deviation() {
        let s = PointSet::from_rational(
            2,
            vec![
                vec![rat(1, 8), rat(5, 8)],
                vec![rat(3, 8), rat(1, 8)],
                vec![rat(7, 8), rat(3, 8)],
                vec![rat(1, 2), rat(1, 2)],
            ],
        )
        .unwrap();
        let rep = box_discrepancy(&s).unwrap();
        let replay = witness_deviation(&s, &rep.witness);
        assert!((replay - rep.d).abs() < 1e-12);
    }

    #[test]
    fn upper_bound_formula() {
        let s = PointSet::equispaced(8);
        let rep = box_discrepancy(&s).unwrap();
        let d = rep.d;
        assert!((rep.j_upper - (5.0 * d).min(1.0)).abs() < 1e-12);
    }
}
