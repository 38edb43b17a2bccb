//! Python bindings. Reports cross the boundary as plain dicts and lists.

use mfk_core::clifford::{abs_class, beh_theta, classify, default_vars, DiagonalForm, GradedCliffordModule};
use mfk_core::exactalg::{milnor_report, parse_poly, Mode, WeightSystem};
use mfk_core::homotopy::{hom_homology_dims, DEFAULT_WINDOW_CAP};
use mfk_core::knoerrer::{knorrer, KnoerrerKind};
use mfk_core::mfcore::{strip_trivial_summands, tensor};
use mfk_core::theta::theta_with_cap;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(mfk, MfkError, PyException);

fn err(e: mfk_core::Error) -> PyErr {
    MfkError::new_err(e.to_json().to_string())
}

fn to_py<'py, T: serde::Serialize>(py: Python<'py>, x: &T) -> PyResult<Bound<'py, PyAny>> {
    let s = serde_json::to_string(x).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (s,))
}

fn parse_mode(mode: &str) -> PyResult<Mode> {
    match mode {
        "rational" => Ok(Mode::Rational),
        "gaussian" => Ok(Mode::Gaussian),
        _ => Err(PyValueError::new_err(format!("unknown mode '{mode}'"))),
    }
}

/// A matrix factorization over Q[x] or Q(i)[x].
#[pyclass(name = "MatrixFactorization", frozen)]
pub struct PyMf {
    inner: mfk_core::MatrixFactorization,
}

#[pymethods]
impl PyMf {
    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        mfk_core::MatrixFactorization::from_json_str(s)
            .map(|inner| PyMf { inner })
            .map_err(err)
    }

    fn to_json(&self) -> String {
        self.inner.to_json_string()
    }

    #[getter]
    fn vars(&self) -> Vec<String> {
        self.inner.vars.clone()
    }

    #[getter]
    fn rank(&self) -> (usize, usize) {
        (self.inner.rank1(), self.inner.rank0())
    }

    #[getter]
    fn graded(&self) -> bool {
        self.inner.is_graded()
    }

    fn validate<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.validate())
    }

    fn shift(&self) -> Self {
        PyMf {
            inner: self.inner.shift(),
        }
    }

    fn direct_sum(&self, other: &PyMf) -> PyResult<Self> {
        self.inner
            .direct_sum(&other.inner)
            .map(|inner| PyMf { inner })
            .map_err(err)
    }

    fn tensor(&self, other: &PyMf) -> PyResult<Self> {
        tensor(&self.inner, &other.inner)
            .map(|inner| PyMf { inner })
            .map_err(err)
    }

    fn strip(&self) -> Self {
        PyMf {
            inner: strip_trivial_summands(&self.inner),
        }
    }

    /// Dimensions of the Z/2-graded morphism complex into `other`.
    #[pyo3(signature = (other = None, window_cap = DEFAULT_WINDOW_CAP))]
    fn hom_homology<'py>(
        &self,
        py: Python<'py>,
        other: Option<&PyMf>,
        window_cap: usize,
    ) -> PyResult<Bound<'py, PyAny>> {
        let q = other.map_or(&self.inner, |o| &o.inner);
        to_py(py, &hom_homology_dims(&self.inner, q, window_cap).map_err(err)?)
    }

    /// Complex companion when `real8` is false, otherwise the rank-16 real one.
    #[pyo3(signature = (real8 = false, positive = false))]
    fn knorrer<'py>(&self, py: Python<'py>, real8: bool, positive: bool) -> PyResult<(Self, Bound<'py, PyAny>)> {
        let kind = if real8 {
            KnoerrerKind::Real8 { positive }
        } else {
            KnoerrerKind::Complex
        };
        let (inner, report) = knorrer(&self.inner, kind).map_err(err)?;
        Ok((PyMf { inner }, to_py(py, &report)?))
    }

    #[pyo3(signature = (other, window_cap = DEFAULT_WINDOW_CAP))]
    fn theta<'py>(&self, py: Python<'py>, other: &PyMf, window_cap: usize) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &theta_with_cap(&self.inner, &other.inner, window_cap).map_err(err)?)
    }

    fn __repr__(&self) -> String {
        format!(
            "MatrixFactorization(f={}, rank=({}, {}))",
            self.inner.f.to_string_with(&self.inner.vars),
            self.inner.rank1(),
            self.inner.rank0()
        )
    }
}

/// A Z/2-graded module over a Clifford algebra of a diagonal form.
#[pyclass(name = "CliffordModule", frozen)]
pub struct PyCliffordModule {
    inner: GradedCliffordModule,
}

#[pymethods]
impl PyCliffordModule {
    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        GradedCliffordModule::from_json_str(s)
            .map(|inner| PyCliffordModule { inner })
            .map_err(err)
    }

    fn to_json(&self) -> String {
        self.inner.to_json_value().to_string()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn abs_class<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let c = abs_class(&self.inner).map_err(err)?;
        let mut v = serde_json::to_value(&c).map_err(|e| PyValueError::new_err(e.to_string()))?;
        v["group_name"] = c.group_name().into();
        v["is_zero"] = c.is_zero().into();
        v["is_free_generator"] = c.is_free_generator().into();
        to_py(py, &v)
    }

    #[pyo3(signature = (vars = None))]
    fn beh(&self, vars: Option<Vec<String>>) -> PyResult<PyMf> {
        let vars = vars.unwrap_or_else(|| default_vars("x", self.inner.n()));
        beh_theta(&self.inner, &vars).map(|inner| PyMf { inner }).map_err(err)
    }
}

/// Milnor number and Poincaré series data of a weighted homogeneous polynomial.
#[pyfunction]
#[pyo3(signature = (f, vars, weights, degree, mode = "rational"))]
fn milnor<'py>(
    py: Python<'py>,
    f: &str,
    vars: Vec<String>,
    weights: Vec<u32>,
    degree: u32,
    mode: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let fp = parse_poly(f, &vars, parse_mode(mode)?).map_err(err)?;
    let w = WeightSystem::new(weights, degree).map_err(err)?;
    to_py(py, &milnor_report(&fp, &w).map_err(err)?)
}

/// Name of the Clifford algebra of the diagonal form with the given coefficients.
#[pyfunction]
#[pyo3(signature = (coeffs, mode = "rational"))]
fn clifford_classify(coeffs: Vec<i64>, mode: &str) -> PyResult<String> {
    let q = DiagonalForm::from_ints(parse_mode(mode)?, &coeffs).map_err(err)?;
    Ok(classify(&q).map_err(err)?.to_string())
}

#[pymodule]
pub fn mfk(m: &Bound<'_, pyo3::types::PyModule>) -> PyResult<()> {
    m.add("MfkError", m.py().get_type::<MfkError>())?;
    m.add_class::<PyMf>()?;
    m.add_class::<PyCliffordModule>()?;
    m.add_function(wrap_pyfunction!(milnor, m)?)?;
    m.add_function(wrap_pyfunction!(clifford_classify, m)?)?;
    Ok(())
}
