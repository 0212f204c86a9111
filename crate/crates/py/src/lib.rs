//! Python bindings: states, densities, the information measures and the
//! report/audit/convergence runners. Structured results come back as plain
//! dicts and lists.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use rydinfo_core::states::{QuantumState, Space};
use rydinfo_core::{complexity, entropy, fisher, moments, report, special, states, Error};

create_exception!(rydinfo, RydinfoError, PyException, "Numerical or domain failure in rydinfo.");

fn err(e: Error) -> PyErr {
    RydinfoError::new_err(format!("{}: {e}", e.kind()))
}

fn space(s: &str) -> PyResult<Space> {
    s.parse().map_err(|_| PyValueError::new_err(format!("space must be 'position' or 'momentum', got '{s}'")))
}

/// Serializes through JSON so nested results become native Python objects.
fn to_py<T: Serialize>(py: Python<'_>, v: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

/// A hydrogenic state (n, l, m) with nuclear charge Z.
#[pyclass(name = "QuantumState", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyState {
    inner: QuantumState,
}

#[pymethods]
impl PyState {
    #[new]
    #[pyo3(signature = (n, l, m, z = 1.0))]
    fn new(n: u32, l: u32, m: i32, z: f64) -> PyResult<Self> {
        Ok(Self { inner: QuantumState::new(n, l, m, z).map_err(err)? })
    }

    #[getter]
    fn n(&self) -> u32 {
        self.inner.n()
    }

    #[getter]
    fn l(&self) -> u32 {
        self.inner.l()
    }

    #[getter]
    fn m(&self) -> i32 {
        self.inner.m()
    }

    #[getter(Z)]
    fn z(&self) -> f64 {
        self.inner.z()
    }

    fn __repr__(&self) -> String {
        format!("QuantumState(n={}, l={}, m={}, Z={})", self.inner.n(), self.inner.l(), self.inner.m(), self.inner.z())
    }
}

#[pyfunction]
fn rho(state: &PyState, r: f64, theta: f64) -> PyResult<f64> {
    Ok(states::rho(&state.inner, r, theta).map_err(err)?.total)
}

#[pyfunction]
fn gamma_p(state: &PyState, p: f64, theta: f64) -> PyResult<f64> {
    Ok(states::gamma_p(&state.inner, p, theta).map_err(err)?.total)
}

#[pyfunction]
#[pyo3(signature = (state, space_name, tol = 1e-10))]
fn normalization(state: &PyState, space_name: &str, tol: f64) -> PyResult<f64> {
    Ok(states::normalization_check(&state.inner, space(space_name)?, tol).map_err(err)?.value)
}

/// ⟨r^α⟩ or ⟨p^α⟩ as (value, abs_err).
#[pyfunction]
#[pyo3(signature = (state, alpha, space_name = "position", tol = 1e-10))]
fn moment(state: &PyState, alpha: f64, space_name: &str, tol: f64) -> PyResult<(f64, f64)> {
    let q = match space(space_name)? {
        Space::Position => moments::r_moment(&state.inner, alpha, tol),
        Space::Momentum => moments::p_moment(&state.inner, alpha, tol),
    }
    .map_err(err)?;
    Ok((q.value, q.abs_err))
}

#[pyfunction]
#[pyo3(signature = (state, space_name, tol = 1e-10))]
fn shannon(state: &PyState, space_name: &str, tol: f64) -> PyResult<(f64, f64)> {
    let q = entropy::shannon(&state.inner, space(space_name)?, tol).map_err(err)?;
    Ok((q.value, q.abs_err))
}

#[pyfunction]
fn fisher_information(state: &PyState, space_name: &str) -> PyResult<f64> {
    Ok(fisher::fisher(&state.inner, space(space_name)?))
}

#[pyfunction]
#[pyo3(signature = (state, space_name, tol = 1e-10))]
fn disequilibrium(state: &PyState, space_name: &str, tol: f64) -> PyResult<(f64, f64)> {
    let q = complexity::disequilibrium(&state.inner, space(space_name)?, tol).map_err(err)?;
    Ok((q.value, q.abs_err))
}

/// {"cramer_rao", "fisher_shannon", "lmc"} with value, abs_err and method.
#[pyfunction]
#[pyo3(signature = (state, space_name, tol = 1e-10))]
fn complexities(py: Python<'_>, state: &PyState, space_name: &str, tol: f64) -> PyResult<Py<PyAny>> {
    let t = complexity::complexity_triple(&state.inner, space(space_name)?, tol).map_err(err)?;
    to_py(py, &t)
}

#[pyfunction]
fn entropic_bound() -> f64 {
    entropy::entropic_bound()
}

/// A full measure report; failing measures appear as error entries.
#[pyfunction]
#[pyo3(signature = (state, measures, space_name = "position", tol = 1e-10))]
fn compute_report(py: Python<'_>, state: &PyState, measures: &str, space_name: &str, tol: f64) -> PyResult<Py<PyAny>> {
    let ms = report::Measure::parse_list(measures).map_err(err)?;
    to_py(py, &report::compute_report(&state.inner, space(space_name)?, &ms, tol))
}

#[pyfunction]
#[pyo3(signature = (state, relations = "all", tol = 1e-10, audit_tol = 1e-6))]
fn audit(py: Python<'_>, state: &PyState, relations: &str, tol: f64, audit_tol: f64) -> PyResult<Py<PyAny>> {
    let rels = report::Relation::parse_list(relations).map_err(err)?;
    to_py(py, &report::audit_state(&state.inner, &rels, tol, audit_tol))
}

#[pyfunction]
#[pyo3(signature = (quantity, ns, l = 0, m = 0, z = 1.0, tol = 1e-10))]
fn converge(py: Python<'_>, quantity: &str, ns: Vec<u32>, l: u32, m: i32, z: f64, tol: f64) -> PyResult<Py<PyAny>> {
    to_py(py, &report::converge(quantity, l, m, z, &ns, tol).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (n, space_name, z = 1.0))]
fn circular_shannon(n: u32, space_name: &str, z: f64) -> PyResult<f64> {
    special::circ_shannon(n, z, space(space_name)?).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (n, z = 1.0, tol = 1e-10))]
fn quasicircular_shannon_position(n: u32, z: f64, tol: f64) -> PyResult<f64> {
    Ok(special::quasi_shannon_position(n, z, tol).map_err(err)?.value)
}

#[pyfunction]
#[pyo3(signature = (n, z = 1.0))]
fn quasicircular_shannon_momentum(n: u32, z: f64) -> PyResult<f64> {
    special::quasi_shannon_momentum(n, z).map_err(err)
}

#[pymodule]
fn rydinfo(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("RydinfoError", m.py().get_type::<RydinfoError>())?;
    m.add_class::<PyState>()?;
    m.add_function(wrap_pyfunction!(rho, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_p, m)?)?;
    m.add_function(wrap_pyfunction!(normalization, m)?)?;
    m.add_function(wrap_pyfunction!(moment, m)?)?;
    m.add_function(wrap_pyfunction!(shannon, m)?)?;
    m.add_function(wrap_pyfunction!(fisher_information, m)?)?;
    m.add_function(wrap_pyfunction!(disequilibrium, m)?)?;
    m.add_function(wrap_pyfunction!(complexities, m)?)?;
    m.add_function(wrap_pyfunction!(entropic_bound, m)?)?;
    m.add_function(wrap_pyfunction!(compute_report, m)?)?;
    m.add_function(wrap_pyfunction!(audit, m)?)?;
    m.add_function(wrap_pyfunction!(converge, m)?)?;
    m.add_function(wrap_pyfunction!(circular_shannon, m)?)?;
    m.add_function(wrap_pyfunction!(quasicircular_shannon_position, m)?)?;
    m.add_function(wrap_pyfunction!(quasicircular_shannon_momentum, m)?)?;
    Ok(())
}
