//! Exact-arithmetic toolkit for equidistribution experiments on the
//! algebraic torus.
//!
//! The crate provides, at desk scale:
//!
//! * torsion points of `G_m^d` as rational angle vectors, their Galois
//!   orbits and strictness degree ([`torus`]);
//! * exact rational polytope geometry in dimension `d <= 4`: hulls,
//!   facet data, volumes, inradius, the shrink map and the continuous
//!   characteristic function ([`polytope`]);
//! * exact two-sided box discrepancy and isotropic-discrepancy bounds
//!   ([`discrepancy`]);
//! * Laurent polynomials with Gaussian-rational coefficients, truncated
//!   logarithms, Mahler measures and log-integrals over polytopes
//!   ([`laurent`]);
//! * Koksma-type error bounds over polytopes and the equidistribution
//!   error of Galois orbits ([`koksma`]);
//! * exact computation of the convergence-rate constants gamma(d,k),
//!   C(d,k) and kappa(d,k) ([`constants`]);
//! * heights of the intersection point P(omega) and the convergence
//!   experiment toward 2*zeta(3)/(3*zeta(2)) ([`heights`]).
//!
//! All group-law tests, memberships and polytope volumes are exact
//! rationals; floating point only enters through logarithms, square
//! roots and quadrature, and every such value is flagged or enclosed.

pub mod constants;
pub mod discrepancy;
pub mod heights;
pub mod jsonio;
pub mod koksma;
pub mod laurent;
pub mod linalg;
pub mod polytope;
pub mod qmc;
pub mod quad;
pub mod ratio;
pub mod simplex;
pub mod torus;

pub use ratio::Rat;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid rational literal `{0}`")]
    BadRational(String),
    #[error("invalid input: {0}")]
    BadInput(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("polytope is not full-dimensional (dim {dim} in ambient {ambient})")]
    NotFullDimensional { dim: usize, ambient: usize },
    #[error("ambient dimension {0} unsupported; exact hulls are built for d <= 4")]
    DimensionTooLarge(usize),
    #[error("shrink parameter must satisfy 0 < epsilon < 1, got {0}")]
    BadEpsilon(String),
    #[error("exact discrepancy mode requires d <= 3 and n <= {cap}, got d = {d}, n = {n}")]
    ExactModeLimit { d: usize, n: usize, cap: usize },
    #[error("point set is empty")]
    EmptyPointSet,
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("some Galois conjugate is a zero of the polynomial")]
    ZeroOnOrbit,
    #[error("orbit angle {0:?} lies exactly on the polytope boundary")]
    BoundaryCollision(Vec<String>),
    #[error("sequence is not strict: strictness degree must increase (row {0})")]
    NotStrict(usize),
    #[error("the identity torsion point is not admissible here")]
    IdentityPoint,
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
