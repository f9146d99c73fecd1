//! Python bindings. Reports come back as plain dicts, built from the same
//! JSON the command-line tool writes.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

use postrig::certify::ZeroKind;
use postrig::seqkit;
use postrig::specfun::constants;
use postrig::{orthosum, sums, CertifyOptions};

create_exception!(postrig, PostrigError, PyValueError, "Raised when a computation is rejected or fails.");

fn err(e: postrig::Error) -> PyErr {
    PostrigError::new_err(e.to_string())
}

fn to_dict<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PostrigError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

/// A finite trigonometric sum with cosine and sine coefficients.
#[pyclass(name = "TrigPolynomial", module = "postrig", frozen)]
pub struct PyTrigPolynomial(postrig::TrigPolynomial);

#[pymethods]
impl PyTrigPolynomial {
    /// a0/2 + Σ cos_coeffs[k-1] cos kθ + sin_coeffs[k-1] sin kθ
    #[new]
    #[pyo3(signature = (a0, cos_coeffs, sin_coeffs))]
    fn new(a0: f64, cos_coeffs: Vec<f64>, sin_coeffs: Vec<f64>) -> PyResult<Self> {
        postrig::TrigPolynomial::new(a0, cos_coeffs, sin_coeffs).map(Self).map_err(err)
    }

    #[staticmethod]
    fn sine(coeffs: Vec<f64>) -> PyResult<Self> {
        postrig::TrigPolynomial::sine(coeffs).map(Self).map_err(err)
    }

    #[staticmethod]
    fn cosine(a0: f64, coeffs: Vec<f64>) -> PyResult<Self> {
        postrig::TrigPolynomial::cosine(a0, coeffs).map(Self).map_err(err)
    }

    fn __call__(&self, theta: f64) -> f64 {
        self.0.eval(theta)
    }

    fn eval(&self, theta: f64) -> f64 {
        self.0.eval(theta)
    }

    fn eval_many(&self, thetas: Vec<f64>) -> Vec<f64> {
        thetas.into_iter().map(|t| self.0.eval(t)).collect()
    }

    fn derivative(&self) -> Self {
        Self(self.0.derivative())
    }

    #[getter]
    fn a0(&self) -> f64 {
        self.0.a0()
    }

    #[getter]
    fn cos_coeffs(&self) -> Vec<f64> {
        self.0.cos_coeffs().to_vec()
    }

    #[getter]
    fn sin_coeffs(&self) -> Vec<f64> {
        self.0.sin_coeffs().to_vec()
    }

    #[getter]
    fn degree(&self) -> f64 {
        self.0.degree()
    }

    fn __repr__(&self) -> String {
        format!("TrigPolynomial(degree={})", self.0.degree())
    }
}

/// Coefficients a_k for k = first_index, first_index + 1, ...
#[pyclass(name = "CoefficientSequence", module = "postrig", frozen)]
pub struct PySequence(postrig::CoefficientSequence);

#[pymethods]
impl PySequence {
    #[new]
    #[pyo3(signature = (values, first_index = 0))]
    fn new(values: Vec<f64>, first_index: usize) -> PyResult<Self> {
        postrig::CoefficientSequence::custom(values, first_index).map(Self).map_err(err)
    }

    #[getter]
    fn values(&self) -> Vec<f64> {
        self.0.values().to_vec()
    }

    #[getter]
    fn first_index(&self) -> usize {
        self.0.first_index()
    }

    #[getter]
    fn family(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_dict(py, &self.0.family())
    }

    #[getter]
    fn params(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_dict(py, self.0.params())
    }

    fn __getitem__(&self, k: usize) -> PyResult<f64> {
        self.0.get(k).ok_or_else(|| pyo3::exceptions::PyIndexError::new_err(k))
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!("CoefficientSequence(first_index={}, len={})", self.0.first_index(), self.0.len())
    }
}

// sequences

#[pyfunction]
fn vietoris_gamma(n: usize) -> PySequence {
    PySequence(seqkit::vietoris_gamma(n))
}

#[pyfunction]
fn qk_sequence(n: usize, alpha: f64, beta: f64, lambda: f64, mu: f64) -> PyResult<PySequence> {
    seqkit::qk_sequence(n, alpha, beta, lambda, mu).map(PySequence).map_err(err)
}

#[pyfunction]
fn koumandos_bk(n: usize, alpha: f64) -> PyResult<PySequence> {
    seqkit::koumandos_bk(n, alpha).map(PySequence).map_err(err)
}

#[pyfunction]
fn ek_sequence(n: usize, alpha: f64, b: f64, c: f64) -> PyResult<PySequence> {
    seqkit::ek_sequence(n, alpha, b, c).map(PySequence).map_err(err)
}

#[pyfunction]
fn ck_sequence(n: usize, alpha: f64, b: f64, c: f64) -> PyResult<PySequence> {
    seqkit::ck_sequence(n, alpha, b, c).map(PySequence).map_err(err)
}

// criteria

#[pyfunction]
fn check_vietoris(py: Python<'_>, seq: &PySequence) -> PyResult<Py<PyAny>> {
    to_dict(py, &seqkit::check_vietoris(&seq.0).map_err(err)?)
}

#[pyfunction]
fn check_belov(py: Python<'_>, seq: &PySequence) -> PyResult<Py<PyAny>> {
    to_dict(py, &seqkit::check_belov(&seq.0).map_err(err)?)
}

#[pyfunction]
fn check_chain_condition(py: Python<'_>, seq: &PySequence, alpha: f64, beta: f64, lambda: f64, mu: f64) -> PyResult<Py<PyAny>> {
    to_dict(py, &seqkit::check_chain_condition(&seq.0, alpha, beta, lambda, mu).map_err(err)?)
}

#[pyfunction]
fn check_bc_ratio_condition(py: Python<'_>, seq: &PySequence, b: f64, c: f64, alpha: f64) -> PyResult<Py<PyAny>> {
    to_dict(py, &seqkit::check_bc_ratio_condition(&seq.0, b, c, alpha).map_err(err)?)
}

// sums

#[pyfunction]
fn qk_sine(n: usize, alpha: f64, beta: f64, lambda: f64, mu: f64) -> PyResult<PyTrigPolynomial> {
    sums::qk_sine(n, alpha, beta, lambda, mu).map(PyTrigPolynomial).map_err(err)
}

#[pyfunction]
fn qk_cosine(n: usize, alpha: f64, beta: f64, lambda: f64, mu: f64) -> PyResult<PyTrigPolynomial> {
    sums::qk_cosine(n, alpha, beta, lambda, mu).map(PyTrigPolynomial).map_err(err)
}

#[pyfunction]
fn ck_cosine(n: usize, alpha: f64, b: f64, c: f64) -> PyResult<PyTrigPolynomial> {
    sums::ck_cosine(n, alpha, b, c).map(PyTrigPolynomial).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (n, alpha, b, c, odd = true))]
fn ck_sine(n: usize, alpha: f64, b: f64, c: f64, odd: bool) -> PyResult<PyTrigPolynomial> {
    sums::ck_sine(n, alpha, b, c, odd).map(PyTrigPolynomial).map_err(err)
}

#[pyfunction]
fn full_cosine(seq: &PySequence) -> PyResult<PyTrigPolynomial> {
    sums::full_cosine(&seq.0).map(PyTrigPolynomial).map_err(err)
}

#[pyfunction]
fn sine_from(seq: &PySequence) -> PyResult<PyTrigPolynomial> {
    sums::sine_from(&seq.0).map(PyTrigPolynomial).map_err(err)
}

// certification

/// Certify poly > 0 on [lo, hi]; returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (poly, lo = 0.0, hi = std::f64::consts::PI, initial_grid = 4096, max_depth = 8, boundary_margin = 1e-4))]
fn certify_positive(
    py: Python<'_>,
    poly: &PyTrigPolynomial,
    lo: f64,
    hi: f64,
    initial_grid: usize,
    max_depth: u32,
    boundary_margin: f64,
) -> PyResult<Py<PyAny>> {
    let opts = CertifyOptions { initial_grid, max_depth, boundary_margin };
    let report = py.detach(|| postrig::certify_positive(&poly.0, lo, hi, &opts)).map_err(err)?;
    to_dict(py, &report)
}

/// (theta, value) of the smallest value on [lo, hi].
#[pyfunction]
fn find_min(poly: &PyTrigPolynomial, lo: f64, hi: f64) -> PyResult<(f64, f64)> {
    postrig::find_min(&poly.0, lo, hi).map_err(err)
}

/// Sign changes of p ("p") or q ("q") built from a_0 > a_1 >= ... >= a_n > 0.
#[pyfunction]
#[pyo3(signature = (kind, coeffs, lo = 0.0, hi = std::f64::consts::TAU, grid = 4096))]
fn bracket_zeros(py: Python<'_>, kind: &str, coeffs: Vec<f64>, lo: f64, hi: f64, grid: usize) -> PyResult<Py<PyAny>> {
    let kind = match kind {
        "p" => ZeroKind::P,
        "q" => ZeroKind::Q,
        other => return Err(PostrigError::new_err(format!("kind must be \"p\" or \"q\", not {other:?}"))),
    };
    to_dict(py, &postrig::bracket_zeros(kind, &coeffs, lo, hi, grid).map_err(err)?)
}

// constants

#[pyfunction]
fn alpha0(py: Python<'_>) -> PyResult<Py<PyAny>> {
    to_dict(py, &constants::alpha0().map_err(err)?)
}

#[pyfunction]
fn alpha0_prime(py: Python<'_>, d: f64) -> PyResult<Py<PyAny>> {
    to_dict(py, &constants::alpha0_prime(d).map_err(err)?)
}

#[pyfunction]
fn lambda_prime(py: Python<'_>) -> PyResult<Py<PyAny>> {
    to_dict(py, &constants::lambda_prime().map_err(err)?)
}

#[pyfunction]
fn expansion_fit(py: Python<'_>) -> PyResult<Py<PyAny>> {
    to_dict(py, &constants::expansion_fit().map_err(err)?)
}

// orthogonal polynomials

#[pyfunction]
fn gegenbauer_c(k: usize, lambda: f64, x: f64) -> PyResult<f64> {
    orthosum::gegenbauer_c(k, lambda, x).map_err(err)
}

#[pyfunction]
fn jacobi_p(k: usize, a: f64, b: f64, x: f64) -> PyResult<f64> {
    orthosum::jacobi_p(k, a, b, x).map_err(err)
}

#[pymodule]
#[pyo3(name = "postrig")]
fn postrig_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("PostrigError", m.py().get_type::<PostrigError>())?;
    m.add_class::<PyTrigPolynomial>()?;
    m.add_class::<PySequence>()?;
    m.add_function(wrap_pyfunction!(vietoris_gamma, m)?)?;
    m.add_function(wrap_pyfunction!(qk_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(koumandos_bk, m)?)?;
    m.add_function(wrap_pyfunction!(ek_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(ck_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(check_vietoris, m)?)?;
    m.add_function(wrap_pyfunction!(check_belov, m)?)?;
    m.add_function(wrap_pyfunction!(check_chain_condition, m)?)?;
    m.add_function(wrap_pyfunction!(check_bc_ratio_condition, m)?)?;
    m.add_function(wrap_pyfunction!(qk_sine, m)?)?;
    m.add_function(wrap_pyfunction!(qk_cosine, m)?)?;
    m.add_function(wrap_pyfunction!(ck_cosine, m)?)?;
    m.add_function(wrap_pyfunction!(ck_sine, m)?)?;
    m.add_function(wrap_pyfunction!(full_cosine, m)?)?;
    m.add_function(wrap_pyfunction!(sine_from, m)?)?;
    m.add_function(wrap_pyfunction!(certify_positive, m)?)?;
    m.add_function(wrap_pyfunction!(find_min, m)?)?;
    m.add_function(wrap_pyfunction!(bracket_zeros, m)?)?;
    m.add_function(wrap_pyfunction!(alpha0, m)?)?;
    m.add_function(wrap_pyfunction!(alpha0_prime, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_prime, m)?)?;
    m.add_function(wrap_pyfunction!(expansion_fit, m)?)?;
    m.add_function(wrap_pyfunction!(gegenbauer_c, m)?)?;
    m.add_function(wrap_pyfunction!(jacobi_p, m)?)?;
    Ok(())
}
