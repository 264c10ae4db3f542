//! Python bindings for `remezkit`.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use remezkit::oracle;
use remezkit::smooth_bounds;

fn py_err(e: remezkit::Error) -> PyErr {
    match e {
        remezkit::Error::LpFailure { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn points_1d(xs: Vec<f64>) -> PyResult<Vec<remezkit::Point>> {
    xs.into_iter()
        .map(|x| remezkit::Point::scalar(x).map_err(py_err))
        .collect()
}

fn points_nd(rows: Vec<Vec<f64>>) -> PyResult<Vec<remezkit::Point>> {
    rows.into_iter()
        .map(|r| remezkit::Point::new(r).map_err(py_err))
        .collect()
}

/// A sampling set in the unit ball.
#[pyclass(name = "SetDescriptor", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySet(remezkit::SetDescriptor);

#[pymethods]
impl PySet {
    /// Finite set from a list of coordinate rows.
    #[staticmethod]
    fn points(coords: Vec<Vec<f64>>) -> PyResult<Self> {
        Ok(PySet(remezkit::SetDescriptor::points(points_nd(coords)?).map_err(py_err)?))
    }

    #[staticmethod]
    fn grid(s: usize) -> PyResult<Self> {
        Ok(PySet(remezkit::SetDescriptor::grid(s).map_err(py_err)?))
    }

    #[staticmethod]
    #[pyo3(signature = (r, n_terms = remezkit::set_models::DEFAULT_TRUNCATION))]
    fn power(r: f64, n_terms: usize) -> PyResult<Self> {
        Ok(PySet(remezkit::SetDescriptor::power(r, n_terms).map_err(py_err)?))
    }

    #[staticmethod]
    fn geometric(q: f64, n_terms: usize) -> PyResult<Self> {
        Ok(PySet(remezkit::SetDescriptor::geometric(q, n_terms).map_err(py_err)?))
    }

    #[staticmethod]
    fn curve(sigma: f64, eps0: f64) -> PyResult<Self> {
        Ok(PySet(remezkit::SetDescriptor::curve(sigma, eps0).map_err(py_err)?))
    }

    #[staticmethod]
    fn body(n: usize, measure: f64) -> PyResult<Self> {
        Ok(PySet(remezkit::SetDescriptor::body(n, measure).map_err(py_err)?))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PySet(remezkit::parse_descriptor(text).map_err(py_err)?))
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    fn dimension(&self) -> usize {
        self.0.dimension()
    }

    /// Coordinates of a finite set as a list of rows.
    fn materialize(&self) -> PyResult<Vec<Vec<f64>>> {
        Ok(self
            .0
            .materialize()
            .map_err(py_err)?
            .into_iter()
            .map(|p| p.coords().to_vec())
            .collect())
    }

    fn __repr__(&self) -> String {
        format!("SetDescriptor({})", self.0.to_json())
    }
}

#[pyclass(name = "OmegaEstimate", frozen, get_all)]
struct PyOmega {
    lo: f64,
    hi: f64,
    witness_eps: f64,
    exact: bool,
    degenerate: bool,
}

#[pymethods]
impl PyOmega {
    fn __repr__(&self) -> String {
        format!(
            "OmegaEstimate(lo={}, hi={}, exact={}, degenerate={})",
            self.lo, self.hi, self.exact, self.degenerate
        )
    }
}

impl From<remezkit::OmegaEstimate> for PyOmega {
    fn from(w: remezkit::OmegaEstimate) -> Self {
        PyOmega {
            lo: w.lo,
            hi: w.hi,
            witness_eps: w.witness_eps,
            exact: w.exact,
            degenerate: w.degenerate,
        }
    }
}

#[pyclass(name = "RemezConstant", frozen, get_all)]
struct PyRemez {
    value: f64,
    provenance: String,
    d: usize,
    n: usize,
}

#[pymethods]
impl PyRemez {
    fn is_finite(&self) -> bool {
        self.value.is_finite()
    }

    fn __repr__(&self) -> String {
        format!("RemezConstant(value={}, provenance='{}', d={}, n={})", self.value, self.provenance, self.d, self.n)
    }
}

impl From<remezkit::RemezConstant> for PyRemez {
    fn from(r: remezkit::RemezConstant) -> Self {
        PyRemez {
            value: r.value,
            provenance: r.provenance.to_string(),
            d: r.d,
            n: r.n,
        }
    }
}

#[pyclass(name = "BoundReport", frozen, get_all)]
struct PyBound {
    bound: f64,
    log10_bound: Option<f64>,
    chosen_degree: Option<usize>,
    e_d_used: f64,
    l: f64,
    rule: String,
    json: String,
}

#[pymethods]
impl PyBound {
    fn __repr__(&self) -> String {
        format!("BoundReport({})", self.json)
    }
}

impl From<remezkit::BoundReport> for PyBound {
    fn from(b: remezkit::BoundReport) -> Self {
        PyBound {
            bound: b.bound,
            log10_bound: b.log10_bound,
            chosen_degree: b.chosen_degree,
            e_d_used: b.e_d_used,
            l: b.l,
            rule: b.rule.to_string(),
            json: b.to_json(),
        }
    }
}

#[pyfunction]
fn chebyshev_t(d: usize, x: f64) -> f64 {
    remezkit::chebyshev_t(d, x)
}

#[pyfunction]
fn remez_factor_1d(d: usize, m: f64) -> PyResult<f64> {
    remezkit::remez_factor_1d(d, m).map_err(py_err)
}

#[pyfunction]
fn remez_factor_nd(n: usize, d: usize, lam: f64) -> PyResult<f64> {
    remezkit::remez_factor_nd(n, d, lam).map_err(py_err)
}

#[pyfunction]
fn vitushkin_md(n: usize, d: usize, eps: f64) -> PyResult<f64> {
    remezkit::vitushkin_md(n, d, eps).map_err(py_err)
}

/// Breakpoints `[(eps, count)]` and the tail count of a 1D set.
#[pyfunction]
fn covering_profile_1d(mut xs: Vec<f64>) -> PyResult<(Vec<(f64, usize)>, usize)> {
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    let p = remezkit::covering_profile_1d(&xs).map_err(py_err)?;
    Ok((p.breakpoints, p.tail))
}

#[pyfunction]
fn omega_d(z: &PySet, d: usize) -> PyResult<PyOmega> {
    Ok(remezkit::omega_d(&z.0, d, z.0.dimension()).map_err(py_err)?.into())
}

#[pyfunction]
fn remez_constant_upper(n: usize, d: usize, omega: f64) -> PyRemez {
    remezkit::remez_constant_upper(n, d, omega).into()
}

#[pyfunction]
fn q_of_set(n: usize, omega: f64) -> PyResult<f64> {
    remezkit::q_of_set(n, omega).map_err(py_err)
}

#[pyfunction]
fn select_d0(l: f64, m: f64, k: usize) -> PyResult<usize> {
    remezkit::select_d0(l, m, k).map_err(py_err)
}

#[pyfunction]
fn general_bound(q: f64, l: f64, m: f64, k: usize) -> PyResult<PyBound> {
    Ok(remezkit::general_bound(q, l, m, k).map_err(py_err)?.into())
}

/// Infimum over `d` of `R_d (L + E_d) + E_d` for `entries = [(R_d, E_d)]`
/// indexed by degree.
#[pyfunction]
fn smooth_remez(l: f64, entries: Vec<(f64, f64)>) -> PyResult<PyBound> {
    let rows: Vec<_> = entries
        .into_iter()
        .enumerate()
        .map(|(d, (r, e))| {
            let rc = if r.is_finite() {
                remezkit::RemezConstant::finite(r.max(1.0), remezkit::Provenance::EntropyBound, d, 1)
            } else {
                remezkit::RemezConstant::infinite(remezkit::Provenance::EntropyBound, d, 1)
            };
            (rc, e)
        })
        .collect();
    Ok(remezkit::smooth_remez(l, &rows).map_err(py_err)?.into())
}

#[pyfunction]
fn taylor_remainder(m_next: f64, d: usize) -> f64 {
    m_next / smooth_bounds::factorial(d + 1)
}

#[pyfunction]
fn whitney_lower(r_d: f64, d: usize) -> f64 {
    let rc = if r_d.is_finite() {
        remezkit::RemezConstant::finite(r_d.max(1.0), remezkit::Provenance::EntropyBound, d, 1)
    } else {
        remezkit::RemezConstant::infinite(remezkit::Provenance::EntropyBound, d, 1)
    };
    remezkit::whitney_lower(&rc, d)
}

#[pyfunction]
fn lp_max_at_point(z: Vec<f64>, d: usize, x: f64) -> PyResult<f64> {
    let x = remezkit::Point::scalar(x).map_err(py_err)?;
    oracle::lp_max_at_point(&points_1d(z)?, d, &x).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (z, d, resolution = 2001))]
fn remez_constant_exact(z: &PySet, d: usize, resolution: usize) -> PyResult<PyRemez> {
    let pts = z.0.materialize().map_err(py_err)?;
    Ok(oracle::remez_constant_exact(&pts, d, resolution).map_err(py_err)?.into())
}

/// Sub-level set `{|P| <= rho}` on [-1, 1] of `sum c_i x^i`.
#[pyfunction]
fn sublevel_intervals(coeffs: Vec<f64>, rho: f64) -> PyResult<Vec<(f64, f64)>> {
    let p = oracle::Polynomial::univariate(coeffs).map_err(py_err)?;
    Ok(oracle::sublevel_intervals(&p, rho).map_err(py_err)?.intervals().to_vec())
}

#[pyfunction]
fn covering_number_intervals(intervals: Vec<(f64, f64)>, eps: f64) -> PyResult<usize> {
    let v = oracle::IntervalUnion::new(intervals).map_err(py_err)?;
    oracle::covering_number_intervals(&v, eps).map_err(py_err)
}

#[pymodule(name = "remezkit")]
fn remezkit_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySet>()?;
    m.add_class::<PyOmega>()?;
    m.add_class::<PyRemez>()?;
    m.add_class::<PyBound>()?;
    m.add_function(wrap_pyfunction!(chebyshev_t, m)?)?;
    m.add_function(wrap_pyfunction!(remez_factor_1d, m)?)?;
    m.add_function(wrap_pyfunction!(remez_factor_nd, m)?)?;
    m.add_function(wrap_pyfunction!(vitushkin_md, m)?)?;
    m.add_function(wrap_pyfunction!(covering_profile_1d, m)?)?;
    m.add_function(wrap_pyfunction!(omega_d, m)?)?;
    m.add_function(wrap_pyfunction!(remez_constant_upper, m)?)?;
    m.add_function(wrap_pyfunction!(q_of_set, m)?)?;
    m.add_function(wrap_pyfunction!(select_d0, m)?)?;
    m.add_function(wrap_pyfunction!(general_bound, m)?)?;
    m.add_function(wrap_pyfunction!(smooth_remez, m)?)?;
    m.add_function(wrap_pyfunction!(taylor_remainder, m)?)?;
    m.add_function(wrap_pyfunction!(whitney_lower, m)?)?;
    m.add_function(wrap_pyfunction!(lp_max_at_point, m)?)?;
    m.add_function(wrap_pyfunction!(remez_constant_exact, m)?)?;
    m.add_function(wrap_pyfunction!(sublevel_intervals, m)?)?;
    m.add_function(wrap_pyfunction!(covering_number_intervals, m)?)?;
    Ok(())
}
