//! Python bindings for the equidistribution toolkit.
//!
//! Exact rationals cross the boundary as `"p/q"` strings, so nothing is
//! rounded until the caller asks for floats.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use equid_core::constants;
use equid_core::discrepancy;
use equid_core::heights;
use equid_core::koksma;
use equid_core::laurent::{self, GaussianRational, LaurentPolynomial, QuadratureConfig};
use equid_core::polytope;
use equid_core::ratio::{fmt_rat, parse_rat, rat_to_f64, Rat};
use equid_core::torus;

fn err(e: equid_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_point(coords: Vec<String>) -> PyResult<Vec<Rat>> {
    coords.iter().map(|s| parse_rat(s).map_err(err)).collect()
}

/// A torsion point of the algebraic torus, held as exact rational angles.
#[pyclass(name = "TorsionPoint", skip_from_py_object)]
#[derive(Clone)]
struct PyTorsionPoint {
    inner: torus::TorsionPoint,
}

#[pymethods]
impl PyTorsionPoint {
    #[new]
    fn new(angles: Vec<String>) -> PyResult<Self> {
        let q = parse_point(angles)?;
        Ok(PyTorsionPoint {
            inner: torus::TorsionPoint::new(&q).map_err(err)?,
        })
    }

    #[getter]
    fn order(&self) -> u64 {
        self.inner.order()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn angles(&self) -> Vec<String> {
        self.inner.angles().iter().map(fmt_rat).collect()
    }

    /// Strictness degree (minimal max-norm of a lattice relation).
    fn delta(&self) -> u64 {
        self.inner.strictness_degree()
    }

    fn delta_witness(&self) -> (u64, Vec<i64>) {
        let (d, w) = self.inner.strictness_degree_with_witness();
        (d, w.0)
    }

    /// True iff `<a, q>` is an integer, i.e. `omega^a = 1`.
    fn subgroup_member(&self, a: Vec<i64>) -> bool {
        self.inner.subgroup_member(&torus::LatticeVector(a))
    }

    fn orbit(&self) -> Vec<PyTorsionPoint> {
        self.inner
            .galois_orbit()
            .into_iter()
            .map(|inner| PyTorsionPoint { inner })
            .collect()
    }

    fn orbit_angles(&self) -> Vec<Vec<String>> {
        self.inner
            .orbit_angles()
            .points()
            .iter()
            .map(|p| p.iter().map(fmt_rat).collect())
            .collect()
    }

    fn __repr__(&self) -> String {
        format!("TorsionPoint({})", self.inner)
    }
}

/// An exact rational polytope with both representations.
#[pyclass(name = "Polytope", skip_from_py_object)]
#[derive(Clone)]
struct PyPolytope {
    inner: polytope::Polytope,
}

#[pymethods]
impl PyPolytope {
    #[new]
    fn new(vertices: Vec<Vec<String>>) -> PyResult<Self> {
        let pts: PyResult<Vec<Vec<Rat>>> = vertices.into_iter().map(parse_point).collect();
        Ok(PyPolytope {
            inner: polytope::Polytope::from_vertices(&pts?).map_err(err)?,
        })
    }

    #[staticmethod]
    fn unit_box(d: usize) -> Self {
        PyPolytope {
            inner: polytope::Polytope::unit_box(d),
        }
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn facet_count(&self) -> usize {
        self.inner.facet_count()
    }

    fn vertices(&self) -> Vec<Vec<String>> {
        self.inner
            .vertices()
            .iter()
            .map(|v| v.iter().map(fmt_rat).collect())
            .collect()
    }

    /// Exact volume as a `"p/q"` string.
    fn volume(&self) -> String {
        fmt_rat(&self.inner.volume())
    }

    fn volume_float(&self) -> f64 {
        rat_to_f64(&self.inner.volume())
    }

    /// Max-norm diameter, exact.
    fn diameter(&self) -> String {
        fmt_rat(&self.inner.diameter())
    }

    fn surface_area(&self) -> PyResult<f64> {
        self.inner.surface_area().map_err(err)
    }

    /// `(inradius, center)` of the inscribed cubic ball, exact.
    fn inradius(&self) -> PyResult<(String, Vec<String>)> {
        let (r, c) = self.inner.inradius_and_center().map_err(err)?;
        Ok((fmt_rat(&r), c.iter().map(fmt_rat).collect()))
    }

    fn contains(&self, point: Vec<String>) -> PyResult<bool> {
        Ok(self.inner.contains(&parse_point(point)?))
    }

    fn strictly_contains(&self, point: Vec<String>) -> PyResult<bool> {
        Ok(self.inner.strictly_contains(&parse_point(point)?))
    }

    /// The continuous characteristic function, exact (`"p/q"`).
    fn chi(&self, epsilon: String, point: Vec<String>) -> PyResult<String> {
        let eps = parse_rat(&epsilon).map_err(err)?;
        let y = parse_point(point)?;
        Ok(fmt_rat(
            &self
                .inner
                .continuous_characteristic(&eps, &y)
                .map_err(err)?,
        ))
    }

    /// `(exact shell volume, bound)` for the shrink at `epsilon`.
    fn shell_volume(&self, epsilon: String) -> PyResult<(String, f64)> {
        let eps = parse_rat(&epsilon).map_err(err)?;
        let b = self.inner.shell_volume_bound(&eps).map_err(err)?;
        Ok((fmt_rat(&b.exact), b.bound))
    }

    fn __repr__(&self) -> String {
        format!(
            "Polytope(dim={}, vertices={}, facets={})",
            self.inner.dim(),
            self.inner.vertices().len(),
            self.inner.facet_count()
        )
    }
}

/// A Laurent polynomial with exact Gaussian-rational coefficients.
#[pyclass(name = "LaurentPolynomial", skip_from_py_object)]
#[derive(Clone)]
struct PyLaurent {
    inner: LaurentPolynomial,
}

#[pymethods]
impl PyLaurent {
    /// `terms`: list of `(exponent_vector, re, im)` with rational strings.
    #[new]
    fn new(dim: usize, terms: Vec<(Vec<i64>, String, String)>) -> PyResult<Self> {
        let mut parsed = Vec::with_capacity(terms.len());
        for (exp, re, im) in terms {
            parsed.push((
                exp,
                GaussianRational::new(parse_rat(&re).map_err(err)?, parse_rat(&im).map_err(err)?),
            ));
        }
        Ok(PyLaurent {
            inner: LaurentPolynomial::new(dim, parsed).map_err(err)?,
        })
    }

    #[staticmethod]
    fn t_minus_one(var: usize, dim: usize) -> Self {
        PyLaurent {
            inner: LaurentPolynomial::t_minus_one(var, dim),
        }
    }

    #[staticmethod]
    fn t_minus_t(a: usize, b: usize, dim: usize) -> Self {
        PyLaurent {
            inner: LaurentPolynomial::t_minus_t(a, b, dim),
        }
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn term_count(&self) -> usize {
        self.inner.term_count()
    }

    /// "essentially_atoral" under the binomial criterion, else "unknown".
    fn atorality(&self) -> &'static str {
        match self.inner.binomial_atoral() {
            laurent::Atorality::EssentiallyAtoral => "essentially_atoral",
            laurent::Atorality::Unknown => "unknown",
        }
    }

    fn zero_on_orbit(&self, omega: &PyTorsionPoint) -> bool {
        laurent::exact_zero_on_orbit(&self.inner, &omega.inner)
    }

    /// `|P(e(x))|` at float angles.
    fn abs_on_torus(&self, x: Vec<f64>) -> f64 {
        self.inner.evaluate_on_torus(&x).norm()
    }

    #[pyo3(signature = (samples = 131072, seed = 0, tol = 1e-3))]
    fn mahler_measure<'py>(
        &self,
        py: Python<'py>,
        samples: usize,
        seed: u64,
        tol: f64,
    ) -> PyResult<Bound<'py, PyDict>> {
        let cfg = QuadratureConfig {
            samples,
            seed,
            tol,
            ..Default::default()
        };
        let rep = laurent::mahler_measure(&self.inner, &cfg).map_err(err)?;
        quadrature_dict(py, &rep)
    }

    #[pyo3(signature = (delta, samples = 131072, seed = 0, tol = 1e-3))]
    fn polytope_log_integral<'py>(
        &self,
        py: Python<'py>,
        delta: &PyPolytope,
        samples: usize,
        seed: u64,
        tol: f64,
    ) -> PyResult<Bound<'py, PyDict>> {
        let cfg = QuadratureConfig {
            samples,
            seed,
            tol,
            ..Default::default()
        };
        let rep = laurent::polytope_log_integral(&self.inner, &delta.inner, &cfg).map_err(err)?;
        quadrature_dict(py, &rep)
    }
}

fn quadrature_dict<'py>(
    py: Python<'py>,
    rep: &laurent::QuadratureReport,
) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("estimate", rep.estimate)?;
    d.set_item("converged", rep.converged)?;
    d.set_item("sampling_error", rep.sampling_error)?;
    d.set_item("samples", rep.samples)?;
    d.set_item("seed", rep.seed)?;
    d.set_item("ladder", rep.ladder.clone())?;
    Ok(d)
}

/// Box discrepancy of rational points (exact when within limits).
#[pyfunction]
fn box_discrepancy(
    py: Python<'_>,
    dim: usize,
    points: Vec<Vec<String>>,
) -> PyResult<Bound<'_, PyDict>> {
    let pts: PyResult<Vec<Vec<Rat>>> = points.into_iter().map(parse_point).collect();
    let set = discrepancy::PointSet::from_rational(dim, pts?).map_err(err)?;
    let rep = discrepancy::box_discrepancy(&set).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("D", rep.d)?;
    d.set_item("D_exact", rep.d_exact.as_ref().map(fmt_rat))?;
    d.set_item("J_lower", rep.j_lower)?;
    d.set_item("J_upper", rep.j_upper)?;
    d.set_item("exact", rep.exact)?;
    Ok(d)
}

/// The rate constants, exactly: gamma, epsilon, the v ladder, kappa and
/// both readings of C.
#[pyfunction]
#[pyo3(signature = (d, k, eps0 = "1/2"))]
fn rate_constants<'py>(
    py: Python<'py>,
    d: usize,
    k: u64,
    eps0: &str,
) -> PyResult<Bound<'py, PyDict>> {
    let e0 = parse_rat(eps0).map_err(err)?;
    let res = constants::gamma_c(d, k, &e0).map_err(err)?;
    let kap = constants::kappa(d, k, &e0).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("gamma", fmt_rat(&res.gamma))?;
    out.set_item("epsilon", fmt_rat(&res.epsilon))?;
    out.set_item("v", res.v.iter().map(fmt_rat).collect::<Vec<_>>())?;
    out.set_item("kappa", fmt_rat(&kap))?;
    out.set_item("C", res.c.describe())?;
    out.set_item("C_literal_min", res.c_literal_min.describe())?;
    out.set_item("C_log2", res.c_log2)?;
    Ok(out)
}

/// The polytope Koksma bound, term by term.
#[pyfunction]
fn koksma_bound<'py>(
    py: Python<'py>,
    delta: &PyPolytope,
    discrepancy_value: f64,
    sup_bound: f64,
    rho_at: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let rep = koksma::polytope_koksma_bound(&delta.inner, discrepancy_value, sup_bound, rho_at)
        .map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("rho_term", rep.rho_term)?;
    d.set_item("inradius_term", rep.inradius_term)?;
    d.set_item("isotropic_term", rep.isotropic_term)?;
    d.set_item("shell_term", rep.shell_term)?;
    d.set_item("total", rep.total)?;
    Ok(d)
}

/// Equidistribution error of one Galois orbit against the polytope
/// log-integral.
#[pyfunction]
#[pyo3(signature = (poly, delta, omega, samples = 131072, seed = 0, tol = 1e-3))]
fn equidist_error<'py>(
    py: Python<'py>,
    poly: &PyLaurent,
    delta: &PyPolytope,
    omega: &PyTorsionPoint,
    samples: usize,
    seed: u64,
    tol: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let cfg = QuadratureConfig {
        samples,
        seed,
        tol,
        ..Default::default()
    };
    let rep = koksma::equidist_error(&poly.inner, &delta.inner, &omega.inner, &cfg).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("error", rep.error)?;
    d.set_item("lhs_sum", rep.lhs_sum)?;
    d.set_item("integral", rep.integral)?;
    d.set_item("count_in", rep.count_in)?;
    d.set_item("orbit_size", rep.orbit_size)?;
    Ok(d)
}

/// Height report for one torsion point in two variables.
#[pyfunction]
fn total_height<'py>(py: Python<'py>, omega: &PyTorsionPoint) -> PyResult<Bound<'py, PyDict>> {
    let rep = heights::total_height(&omega.inner).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("order", rep.order)?;
    d.set_item("delta", rep.delta_degree)?;
    d.set_item("h_arch", rep.h_arch)?;
    d.set_item("h_nonarch", rep.h_nonarch)?;
    d.set_item("h_total", rep.h_total)?;
    d.set_item("gap", rep.target_gap)?;
    Ok(d)
}

/// The limit constant `2 zeta(3) / (3 zeta(2))`.
#[pyfunction]
fn limit_height() -> f64 {
    heights::limit_height()
}

/// Height sweep over primes in `[lo, hi]` with `omega = (1/p, round(ratio p)/p)`.
#[pyfunction]
fn height_sweep(py: Python<'_>, lo: u64, hi: u64, ratio: f64) -> PyResult<Vec<Bound<'_, PyDict>>> {
    let rows = heights::height_sweep(lo, hi, ratio, 0.0).map_err(err)?;
    let mut out = Vec::with_capacity(rows.len());
    for r in rows {
        let d = PyDict::new(py);
        d.set_item("p", r.p)?;
        d.set_item("mult", r.multiplier)?;
        d.set_item("delta", r.report.delta_degree)?;
        d.set_item("h_arch", r.report.h_arch)?;
        d.set_item("h_nonarch", r.report.h_nonarch)?;
        d.set_item("h_total", r.report.h_total)?;
        d.set_item("gap", r.report.target_gap)?;
        out.push(d);
    }
    Ok(out)
}

#[pymodule]
fn equid(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTorsionPoint>()?;
    m.add_class::<PyPolytope>()?;
    m.add_class::<PyLaurent>()?;
    m.add_function(wrap_pyfunction!(box_discrepancy, m)?)?;
    m.add_function(wrap_pyfunction!(rate_constants, m)?)?;
    m.add_function(wrap_pyfunction!(koksma_bound, m)?)?;
    m.add_function(wrap_pyfunction!(equidist_error, m)?)?;
    m.add_function(wrap_pyfunction!(total_height, m)?)?;
    m.add_function(wrap_pyfunction!(limit_height, m)?)?;
    m.add_function(wrap_pyfunction!(height_sweep, m)?)?;
    Ok(())
}
