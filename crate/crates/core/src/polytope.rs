//! Exact rational polytope geometry in ambient dimension `d <= 4`.
//!
//! A [`Polytope`] carries both representations: the extreme points and
//! the facet halfspaces `<u, x> <= c` with primitive integer outward
//! normals (plus affine-hull equalities when the polytope is not
//! full-dimensional). Hulls are built by exact supporting-hyperplane
//! enumeration, which is robust against every degeneracy at desk scale.
//!
//! On top of the hull sit the quantities the equidistribution bounds
//! consume: exact volume and max-norm diameter, surface area with a
//! rational enclosure, the inscribed cubic ball (an exact LP), the
//! shrink map `x -> x_c + (1-eps)(x - x_c)` with its truncated-
//! hyperpyramid shell decomposition, and the continuous characteristic
//! function `chi^c`.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::linalg::{
    self, dot, hyperplane_normal, max_norm, primitive_integer_vector, sub, RatMat, RatVec,
};
use crate::ratio::{rat_to_f64, sqrt_enclosure, Rat};
use crate::simplex::{maximize, LpOutcome};
use crate::{Error, Result};

/// Closed halfspace `<normal, x> <= offset` with primitive integer
/// outward normal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Halfspace {
    pub normal: Vec<BigInt>,
    pub offset: Rat,
}

impl Halfspace {
    pub fn eval(&self, x: &[Rat]) -> Rat {
        let mut s = Rat::zero();
        for (n, xi) in self.normal.iter().zip(x) {
            s += Rat::from_integer(n.clone()) * xi;
        }
        s
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.eval(x) <= self.offset
    }

    /// l1 norm of the normal, as a rational.
    pub fn normal_l1(&self) -> Rat {
        Rat::from_integer(self.normal.iter().map(|v| v.abs()).sum::<BigInt>())
    }
}

/// A facet together with the ids of the vertices lying on it.
#[derive(Debug, Clone)]
pub struct Facet {
    pub halfspace: Halfspace,
    pub vertex_ids: Vec<usize>,
}

/// Full- or lower-dimensional polytope with exact V- and H-representations.
#[derive(Debug, Clone)]
pub struct Polytope {
    ambient: usize,
    dim: usize,
    vertices: Vec<RatVec>,
    facets: Vec<Facet>,
    /// Affine-hull equalities `<u, x> = c`; empty iff full-dimensional.
    equalities: Vec<(Vec<BigInt>, Rat)>,
    in_unit_box: bool,
    inball: OnceLock<(Rat, RatVec)>,
}

/// Result of the shrink map: the inner polytope and the shell pieces.
#[derive(Debug, Clone)]
pub struct ShrinkResult {
    pub center: RatVec,
    pub epsilon: Rat,
    pub inner: Polytope,
    pub shell_pieces: Vec<Polytope>,
}

/// Exact shell volume versus the surface-area bound.
#[derive(Debug, Clone)]
pub struct ShellVolumeBound {
    pub exact: Rat,
    /// Rational enclosure of `eps * S * diam / sqrt(d)`.
    pub bound_lo: Rat,
    pub bound_hi: Rat,
    pub bound: f64,
}

fn lex_cmp(a: &[Rat], b: &[Rat]) -> std::cmp::Ordering {
    a.iter().cmp(b.iter())
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

impl Polytope {
    /// Convex hull of rational points; derives the H-representation.
    ///
    /// Interior and non-extreme input points are dropped. Lower
    /// dimensional input yields a polytope with affine-hull equalities
    /// and facets expressed inside the hull.
    pub fn from_vertices(points: &[RatVec]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::BadInput("empty vertex list".into()));
        }
        let ambient = points[0].len();
        if ambient == 0 {
            return Err(Error::BadInput("zero-dimensional ambient space".into()));
        }
        if ambient > 4 {
            return Err(Error::DimensionTooLarge(ambient));
        }
        for p in points {
            if p.len() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    got: p.len(),
                });
            }
        }
        // dedupe
        let mut pts: Vec<RatVec> = points.to_vec();
        pts.sort_by(|a, b| lex_cmp(a, b));
        pts.dedup();

        // affine basis
        let p0 = pts[0].clone();
        let mut basis: RatMat = Vec::new();
        for p in &pts[1..] {
            let d = sub(p, &p0);
            let mut trial = basis.clone();
            trial.push(d.clone());
            if linalg::rank(&trial) > basis.len() {
                basis.push(d);
            }
        }
        let dim = basis.len();

        let poly = if dim == ambient {
            Self::hull_full_dim(pts, ambient)?
        } else {
            Self::hull_lower_dim(pts, ambient, dim, &p0, &basis)?
        };
        Ok(poly)
    }

    fn hull_full_dim(pts: Vec<RatVec>, d: usize) -> Result<Self> {
        let n = pts.len();
        // enumerate supporting hyperplanes through d affinely independent points
        let mut seen = std::collections::BTreeSet::new();
        let mut halfspaces: Vec<Halfspace> = Vec::new();
        for subset in combinations(n, d) {
            let base = &pts[subset[0]];
            let diffs: RatMat = subset[1..].iter().map(|&i| sub(&pts[i], base)).collect();
            let Some(normal) = hyperplane_normal(&diffs, d) else {
                continue;
            };
            let c = dot(&normal, base);
            let mut any_above = false;
            let mut any_below = false;
            for p in &pts {
                let v = dot(&normal, p);
                if v > c {
                    any_above = true;
                } else if v < c {
                    any_below = true;
                }
                if any_above && any_below {
                    break;
                }
            }
            if any_above && any_below {
                continue;
            }
            let (u, mut cc) = if any_above {
                (normal.iter().map(|x| -x).collect::<RatVec>(), -c)
            } else {
                (normal, c)
            };
            let iu = primitive_integer_vector(&u);
            // rescale offset consistently with the primitive normal
            let k = (0..d).find(|&i| !u[i].is_zero()).expect("nonzero normal");
            let s = Rat::from_integer(iu[k].clone()) / &u[k];
            cc *= s;
            if seen.insert((iu.clone(), cc.clone())) {
                halfspaces.push(Halfspace {
                    normal: iu,
                    offset: cc,
                });
            }
        }
        // extreme points: active constraints span the ambient space
        let mut vertices: Vec<RatVec> = Vec::new();
        for p in &pts {
            let active: RatMat = halfspaces
                .iter()
                .filter(|h| h.eval(p) == h.offset)
                .map(|h| {
                    h.normal
                        .iter()
                        .map(|x| Rat::from_integer(x.clone()))
                        .collect()
                })
                .collect();
            if active.len() >= d && linalg::rank(&active) == d {
                vertices.push(p.clone());
            }
        }
        vertices.sort_by(|a, b| lex_cmp(a, b));
        let facets = halfspaces
            .into_iter()
            .map(|h| {
                let vertex_ids = vertices
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| h.eval(v) == h.offset)
                    .map(|(i, _)| i)
                    .collect();
                Facet {
                    halfspace: h,
                    vertex_ids,
                }
            })
            .collect();
        let in_unit_box = unit_box_check(&vertices);
        Ok(Polytope {
            ambient: d,
            dim: d,
            vertices,
            facets,
            equalities: Vec::new(),
            in_unit_box,
            inball: OnceLock::new(),
        })
    }

    fn hull_lower_dim(
        pts: Vec<RatVec>,
        ambient: usize,
        dim: usize,
        p0: &[Rat],
        basis: &RatMat,
    ) -> Result<Self> {
        // affine-hull equalities from the orthogonal complement of the basis;
        // an empty basis (single point) pins every coordinate
        let complement: RatMat = if basis.is_empty() {
            (0..ambient)
                .map(|i| {
                    let mut e = vec![Rat::zero(); ambient];
                    e[i] = Rat::one();
                    e
                })
                .collect()
        } else {
            linalg::null_space(basis)
        };
        let equalities: Vec<(Vec<BigInt>, Rat)> = complement
            .into_iter()
            .map(|w| {
                let iw = primitive_integer_vector(&w);
                let c = iw
                    .iter()
                    .zip(p0)
                    .map(|(n, x)| Rat::from_integer(n.clone()) * x)
                    .sum();
                (iw, c)
            })
            .collect();
        if dim == 0 {
            let vertices = vec![p0.to_vec()];
            let in_unit_box = unit_box_check(&vertices);
            return Ok(Polytope {
                ambient,
                dim,
                vertices,
                facets: Vec::new(),
                equalities,
                in_unit_box,
                inball: OnceLock::new(),
            });
        }
        // local coordinates: columns of m are the basis vectors
        let m: RatMat = (0..ambient)
            .map(|row| (0..dim).map(|col| basis[col][row].clone()).collect())
            .collect();
        let mut local: Vec<RatVec> = Vec::with_capacity(pts.len());
        for p in &pts {
            let y = linalg::solve_overdetermined(&m, &sub(p, p0))
                .expect("point lies in its own affine hull");
            local.push(y);
        }
        let inner = Self::hull_full_dim(local, dim)?;
        // left inverse l = (m^T m)^-1 m^T maps ambient offsets to local coords
        let mt: RatMat = (0..dim)
            .map(|r| (0..ambient).map(|c| m[c][r].clone()).collect())
            .collect();
        let mtm: RatMat = (0..dim)
            .map(|r| (0..dim).map(|c| dot(&mt[r], &basis[c])).collect())
            .collect();
        let mut left_inv: RatMat = Vec::with_capacity(dim);
        for r in 0..dim {
            // row r of (m^T m)^-1 m^T: solve (m^T m) z = e_r, then z^T m^T
            let mut e = vec![Rat::zero(); dim];
            e[r] = Rat::one();
            let z = linalg::solve(&mtm, &e).expect("gram matrix invertible");
            let row: RatVec = (0..ambient)
                .map(|c| (0..dim).map(|k| &z[k] * &mt[k][c]).sum())
                .collect();
            left_inv.push(row);
        }
        // map the inner polytope's data back to ambient coordinates
        let to_ambient = |y: &[Rat]| -> RatVec {
            (0..ambient)
                .map(|r| {
                    let mut s = p0[r].clone();
                    for (k, yk) in y.iter().enumerate() {
                        s += &basis[k][r] * yk;
                    }
                    s
                })
                .collect()
        };
        let vertices: Vec<RatVec> = inner.vertices.iter().map(|v| to_ambient(v)).collect();
        let facets: Vec<Facet> = inner
            .facets
            .iter()
            .map(|f| {
                let u_local: RatVec = f
                    .halfspace
                    .normal
                    .iter()
                    .map(|x| Rat::from_integer(x.clone()))
                    .collect();
                // ambient covector u = u_local^T . left_inv
                let u: RatVec = (0..ambient)
                    .map(|c| (0..dim).map(|k| &u_local[k] * &left_inv[k][c]).sum())
                    .collect();
                let iu = primitive_integer_vector(&u);
                let k = (0..ambient).find(|&i| !u[i].is_zero()).expect("nonzero");
                let s = Rat::from_integer(iu[k].clone()) / &u[k];
                let offset =
                    (&f.halfspace.offset + u.iter().zip(p0).map(|(a, b)| a * b).sum::<Rat>()) * s;
                Facet {
                    halfspace: Halfspace { normal: iu, offset },
                    vertex_ids: f.vertex_ids.clone(),
                }
            })
            .collect();
        let in_unit_box = unit_box_check(&vertices);
        Ok(Polytope {
            ambient,
            dim,
            vertices,
            facets,
            equalities,
            in_unit_box,
            inball: OnceLock::new(),
        })
    }

    /// Axis-aligned unit hypercube `[0,1]^d`.
    pub fn unit_box(d: usize) -> Self {
        let mut corners = Vec::with_capacity(1 << d);
        for mask in 0u32..(1 << d) {
            corners.push(
                (0..d)
                    .map(|i| {
                        if mask >> i & 1 == 1 {
                            Rat::one()
                        } else {
                            Rat::zero()
                        }
                    })
                    .collect(),
            );
        }
        Self::from_vertices(&corners).expect("unit box is a valid polytope")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient
    }

    pub fn vertices(&self) -> &[RatVec] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    pub fn equalities(&self) -> &[(Vec<BigInt>, Rat)] {
        &self.equalities
    }

    pub fn in_unit_box(&self) -> bool {
        self.in_unit_box
    }

    /// Closed membership, exact.
    pub fn contains(&self, x: &[Rat]) -> bool {
        if x.len() != self.ambient {
            return false;
        }
        self.equalities.iter().all(|(u, c)| {
            u.iter()
                .zip(x)
                .map(|(n, xi)| Rat::from_integer(n.clone()) * xi)
                .sum::<Rat>()
                == *c
        }) && self.facets.iter().all(|f| f.halfspace.contains(x))
    }

    /// Strict interior membership (in the ambient space); always false
    /// for lower-dimensional polytopes.
    pub fn strictly_contains(&self, x: &[Rat]) -> bool {
        if x.len() != self.ambient || !self.is_full_dimensional() {
            return false;
        }
        self.facets
            .iter()
            .all(|f| f.halfspace.eval(x) < f.halfspace.offset)
    }

    /// True iff `x` lies on the boundary of the polytope.
    pub fn on_boundary(&self, x: &[Rat]) -> bool {
        self.contains(x) && !self.strictly_contains(x)
    }

    /// Max-norm diameter; the maximum is attained at a vertex pair.
    pub fn diameter(&self) -> Rat {
        let mut best = Rat::zero();
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                let d = max_norm(&sub(a, b));
                if d > best {
                    best = d;
                }
            }
        }
        best
    }

    /// Decomposes the polytope into simplices of its intrinsic dimension
    /// (each simplex is `dim + 1` ambient points).
    pub fn triangulate(&self) -> Vec<Vec<RatVec>> {
        if self.vertices.len() == self.dim + 1 {
            return vec![self.vertices.clone()];
        }
        // cone from the lex-min vertex over the facets avoiding it
        let apex = self.vertices[0].clone();
        let mut out = Vec::new();
        for f in &self.facets {
            if f.vertex_ids.contains(&0) {
                continue;
            }
            let fpts: Vec<RatVec> = f
                .vertex_ids
                .iter()
                .map(|&i| self.vertices[i].clone())
                .collect();
            let sub_poly = Polytope::from_vertices(&fpts).expect("facet point set is nonempty");
            for mut s in sub_poly.triangulate() {
                s.push(apex.clone());
                out.push(s);
            }
        }
        out
    }

    /// Exact Lebesgue volume (`0` for lower-dimensional polytopes).
    pub fn volume(&self) -> Rat {
        if !self.is_full_dimensional() {
            return Rat::zero();
        }
        let d = self.ambient;
        let mut factorial = Rat::one();
        for k in 1..=d {
            factorial *= Rat::from_integer(BigInt::from(k));
        }
        let mut vol = Rat::zero();
        for simplex in self.triangulate() {
            let base = &simplex[d];
            let rows: RatMat = simplex[..d].iter().map(|p| sub(p, base)).collect();
            vol += linalg::det(&rows).abs() / &factorial;
        }
        vol
    }

    /// Surface area: the sum over facets of their Euclidean
    /// `(d-1)`-volume, returned as a rational enclosure `[lo, hi]`.
    ///
    /// Gram determinants are exact; only the final square roots are
    /// enclosed.
    pub fn surface_area_enclosure(&self) -> Result<(Rat, Rat)> {
        if !self.is_full_dimensional() {
            return Err(Error::NotFullDimensional {
                dim: self.dim,
                ambient: self.ambient,
            });
        }
        let d = self.ambient;
        let mut factorial = Rat::one();
        for k in 1..d {
            factorial *= Rat::from_integer(BigInt::from(k));
        }
        let mut lo = Rat::zero();
        let mut hi = Rat::zero();
        for f in &self.facets {
            let fpts: Vec<RatVec> = f
                .vertex_ids
                .iter()
                .map(|&i| self.vertices[i].clone())
                .collect();
            let facet_poly = Polytope::from_vertices(&fpts)?;
            for simplex in facet_poly.triangulate() {
                let base = &simplex[d - 1];
                let rows: RatMat = simplex[..d - 1].iter().map(|p| sub(p, base)).collect();
                // gram determinant of the edge vectors
                let gram: RatMat = (0..d - 1)
                    .map(|i| (0..d - 1).map(|j| dot(&rows[i], &rows[j])).collect())
                    .collect();
                let g = linalg::det(&gram);
                let (slo, shi) = sqrt_enclosure(&g, 96);
                lo += slo / &factorial;
                hi += shi / &factorial;
            }
        }
        Ok((lo, hi))
    }

    /// Surface area as a plain float (midpoint of the enclosure).
    pub fn surface_area(&self) -> Result<f64> {
        let (lo, hi) = self.surface_area_enclosure()?;
        Ok((rat_to_f64(&lo) + rat_to_f64(&hi)) / 2.0)
    }

    /// Radius and center of an inscribed cubic (max-norm) ball of maximal
    /// radius, by exact rational LP; among optimal centers the
    /// lexicographically smallest is returned.
    pub fn inradius_and_center(&self) -> Result<(Rat, RatVec)> {
        if !self.is_full_dimensional() {
            return Err(Error::NotFullDimensional {
                dim: self.dim,
                ambient: self.ambient,
            });
        }
        if let Some((r, c)) = self.inball.get() {
            return Ok((r.clone(), c.clone()));
        }
        let d = self.ambient;
        // variables (x_1..x_d, r): maximize r
        // constraints: <u_j, x> + r * |u_j|_1 <= c_j  and -r <= 0
        let mut rows: Vec<RatVec> = Vec::new();
        let mut rhs: Vec<Rat> = Vec::new();
        for f in &self.facets {
            let mut row: RatVec = f
                .halfspace
                .normal
                .iter()
                .map(|n| Rat::from_integer(n.clone()))
                .collect();
            row.push(f.halfspace.normal_l1());
            rows.push(row);
            rhs.push(f.halfspace.offset.clone());
        }
        let mut nonneg = vec![Rat::zero(); d + 1];
        nonneg[d] = -Rat::one();
        rows.push(nonneg);
        rhs.push(Rat::zero());

        let mut objective = vec![Rat::zero(); d + 1];
        objective[d] = Rat::one();
        let LpOutcome::Optimal { value: radius, .. } = maximize(&objective, &rows, &rhs) else {
            return Err(Error::Infeasible);
        };
        // pin r = r*, then lexicographically minimize the center
        rows.push({
            let mut row = vec![Rat::zero(); d + 1];
            row[d] = Rat::one();
            row
        });
        rhs.push(radius.clone());
        rows.push({
            let mut row = vec![Rat::zero(); d + 1];
            row[d] = -Rat::one();
            row
        });
        rhs.push(-radius.clone());
        let mut center = vec![Rat::zero(); d];
        for i in 0..d {
            let mut objective = vec![Rat::zero(); d + 1];
            objective[i] = -Rat::one();
            let LpOutcome::Optimal { value, .. } = maximize(&objective, &rows, &rhs) else {
                return Err(Error::Infeasible);
            };
            center[i] = -value;
            for sign in [Rat::one(), -Rat::one()] {
                let mut row = vec![Rat::zero(); d + 1];
                row[i] = sign.clone();
                rows.push(row);
                rhs.push(&center[i] * sign);
            }
        }
        let _ = self.inball.set((radius.clone(), center.clone()));
        Ok((radius, center))
    }

    /// The shrink map: inner polytope `Delta_eps` with vertices
    /// `(1-eps) v + eps x_c`, plus one truncated-hyperpyramid shell piece
    /// `conv(F_i, phi_eps(F_i))` per facet.
    pub fn shrink(&self, epsilon: &Rat) -> Result<ShrinkResult> {
        if epsilon <= &Rat::zero() || epsilon >= &Rat::one() {
            return Err(Error::BadEpsilon(crate::ratio::fmt_rat(epsilon)));
        }
        if !self.is_full_dimensional() {
            return Err(Error::NotFullDimensional {
                dim: self.dim,
                ambient: self.ambient,
            });
        }
        let (_, center) = self.inradius_and_center()?;
        let one_minus = Rat::one() - epsilon;
        let map = |v: &[Rat]| -> RatVec {
            v.iter()
                .zip(&center)
                .map(|(x, c)| &one_minus * x + epsilon * c)
                .collect()
        };
        // vertices map affinely with positive scale: lex order is preserved,
        // facets keep their normals, offsets shrink accordingly
        let vertices: Vec<RatVec> = self.vertices.iter().map(|v| map(v)).collect();
        let facets: Vec<Facet> = self
            .facets
            .iter()
            .map(|f| Facet {
                halfspace: Halfspace {
                    normal: f.halfspace.normal.clone(),
                    offset: &one_minus * &f.halfspace.offset + epsilon * f.halfspace.eval(&center),
                },
                vertex_ids: f.vertex_ids.clone(),
            })
            .collect();
        let in_unit_box = unit_box_check(&vertices);
        let inner = Polytope {
            ambient: self.ambient,
            dim: self.dim,
            vertices,
            facets,
            equalities: Vec::new(),
            in_unit_box,
            inball: OnceLock::new(),
        };
        let mut shell_pieces = Vec::with_capacity(self.facets.len());
        for f in &self.facets {
            let mut pts: Vec<RatVec> = f
                .vertex_ids
                .iter()
                .map(|&i| self.vertices[i].clone())
                .collect();
            let mapped: Vec<RatVec> = pts.iter().map(|p| map(p)).collect();
            pts.extend(mapped);
            shell_pieces.push(Polytope::from_vertices(&pts)?);
        }
        Ok(ShrinkResult {
            center,
            epsilon: epsilon.clone(),
            inner,
            shell_pieces,
        })
    }

    /// Exact shell volume `vol(Delta) - vol(Delta_eps)` against the bound
    /// `eps * S(Delta) * diam(Delta) / sqrt(d)`.
    pub fn shell_volume_bound(&self, epsilon: &Rat) -> Result<ShellVolumeBound> {
        let shrink = self.shrink(epsilon)?;
        let exact = self.volume() - shrink.inner.volume();
        let (s_lo, s_hi) = self.surface_area_enclosure()?;
        let diam = self.diameter();
        let d = Rat::from_integer(BigInt::from(self.ambient));
        let (sqrt_d_lo, sqrt_d_hi) = sqrt_enclosure(&d, 96);
        let bound_lo = epsilon * &s_lo * &diam / &sqrt_d_hi;
        let bound_hi = epsilon * &s_hi * &diam / &sqrt_d_lo;
        let bound = (rat_to_f64(&bound_lo) + rat_to_f64(&bound_hi)) / 2.0;
        Ok(ShellVolumeBound {
            exact,
            bound_lo,
            bound_hi,
            bound,
        })
    }

    /// The continuous characteristic function `chi^c_{Delta,eps}(y)`,
    /// evaluated exactly: `0` outside, `1` on `Delta_eps`, and the ray
    /// interpolation `delta_y / eps` on the shell.
    pub fn continuous_characteristic(&self, epsilon: &Rat, y: &[Rat]) -> Result<Rat> {
        if epsilon <= &Rat::zero() || epsilon >= &Rat::one() {
            return Err(Error::BadEpsilon(crate::ratio::fmt_rat(epsilon)));
        }
        if !self.is_full_dimensional() {
            return Err(Error::NotFullDimensional {
                dim: self.dim,
                ambient: self.ambient,
            });
        }
        if !self.contains(y) {
            return Ok(Rat::zero());
        }
        let (_, center) = self.inradius_and_center()?;
        if y == &center[..] {
            return Ok(Rat::one());
        }
        // lambda_y = sup { t >= 0 : x_c + t (y - x_c) in Delta }
        let dir = sub(y, &center);
        let mut lambda: Option<Rat> = None;
        for f in &self.facets {
            let denom = f.halfspace.eval(&dir);
            if denom.is_positive() {
                let t = (&f.halfspace.offset - f.halfspace.eval(&center)) / denom;
                lambda = Some(match lambda {
                    None => t,
                    Some(cur) => cur.min(t),
                });
            }
        }
        let lambda = lambda.expect("bounded polytope: some facet limits the ray");
        debug_assert!(lambda >= Rat::one());
        let delta_y = Rat::one() - lambda.recip();
        if &delta_y >= epsilon {
            Ok(Rat::one())
        } else {
            Ok(delta_y / epsilon)
        }
    }

    /// `chi^c` on float points: the input is converted exactly to
    /// rationals, so the membership logic stays exact.
    pub fn continuous_characteristic_f64(&self, epsilon: &Rat, y: &[f64]) -> Result<f64> {
        let yr: RatVec = y.iter().map(|&v| crate::ratio::rat_from_f64(v)).collect();
        Ok(rat_to_f64(&self.continuous_characteristic(epsilon, &yr)?))
    }

    /// Closed membership for float points (exact rational conversion).
    pub fn contains_f64(&self, y: &[f64]) -> bool {
        let yr: RatVec = y.iter().map(|&v| crate::ratio::rat_from_f64(v)).collect();
        self.contains(&yr)
    }
}

fn unit_box_check(vertices: &[RatVec]) -> bool {
    vertices
        .iter()
        .all(|v| v.iter().all(|x| !x.is_negative() && x <= &Rat::one()))
}

/// Interiors of two full-dimensional polytopes intersect iff a point
/// satisfies all constraints of both with positive slack; decided by an
/// exact LP on the common slack.
pub fn interiors_intersect(a: &Polytope, b: &Polytope) -> Result<bool> {
    if !a.is_full_dimensional() || !b.is_full_dimensional() {
        return Err(Error::NotFullDimensional {
            dim: a.dim.min(b.dim),
            ambient: a.ambient,
        });
    }
    let d = a.ambient;
    let mut rows: Vec<RatVec> = Vec::new();
    let mut rhs: Vec<Rat> = Vec::new();
    for f in a.facets().iter().chain(b.facets()) {
        let mut row: RatVec = f
            .halfspace
            .normal
            .iter()
            .map(|n| Rat::from_integer(n.clone()))
            .collect();
        row.push(Rat::one());
        rows.push(row);
        rhs.push(f.halfspace.offset.clone());
    }
    // cap the slack so the LP stays bounded
    let mut cap = vec![Rat::zero(); d + 1];
    cap[d] = Rat::one();
    rows.push(cap);
    rhs.push(Rat::one());
    let mut objective = vec![Rat::zero(); d + 1];
    objective[d] = Rat::one();
    match maximize(&objective, &rows, &rhs) {
        LpOutcome::Optimal { value, .. } => Ok(value.is_positive()),
        LpOutcome::Infeasible => Ok(false),
        LpOutcome::Unbounded => unreachable!("slack is capped"),
    }
}
