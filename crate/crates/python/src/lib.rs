//! Python bindings: `import hyperterm`.

use hyperterm_core as core;
use pyo3::create_exception;
use pyo3::exceptions::{PyArithmeticError, PyOverflowError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

create_exception!(
    hyperterm,
    DivergentError,
    PyArithmeticError,
    "The index lies at or past a pole."
);
create_exception!(
    hyperterm,
    NoConvergenceError,
    PyRuntimeError,
    "The term or level budget ran out."
);

fn to_py(e: core::Error) -> PyErr {
    match e {
        core::Error::Param(_) | core::Error::Domain(_) => PyValueError::new_err(e.to_string()),
        core::Error::Overflow => PyOverflowError::new_err(e.to_string()),
        core::Error::Divergent(_) => DivergentError::new_err(e.to_string()),
        core::Error::NoConvergence { .. } => NoConvergenceError::new_err(e.to_string()),
    }
}

#[pyclass(frozen, skip_from_py_object, name = "SeriesParams")]
#[derive(Clone, Copy)]
struct PySeriesParams(core::SeriesParams);

#[pymethods]
impl PySeriesParams {
    #[new]
    fn new(a: f64, b: f64) -> PyResult<Self> {
        core::SeriesParams::new(a, b).map(Self).map_err(to_py)
    }

    #[getter]
    fn a(&self) -> f64 {
        self.0.a()
    }

    #[getter]
    fn b(&self) -> f64 {
        self.0.b()
    }

    /// The factor `a + x·b`.
    fn factor(&self, x: f64) -> f64 {
        self.0.factor(x)
    }

    /// True when `a + n·b ≤ 0`, where `Δ:n` is infinite.
    fn is_divergent(&self, n: f64) -> PyResult<bool> {
        Ok(matches!(
            core::validate(self.0, n).map_err(to_py)?,
            core::Validated::Divergent(_)
        ))
    }

    fn __repr__(&self) -> String {
        format!("SeriesParams(a={:?}, b={:?})", self.0.a(), self.0.b())
    }
}

#[pyclass(frozen, name = "EvalResult")]
struct PyEvalResult(core::EvalResult);

#[pymethods]
impl PyEvalResult {
    #[getter]
    fn value(&self) -> f64 {
        self.0.value
    }

    #[getter]
    fn method(&self) -> &'static str {
        self.0.method.as_str()
    }

    /// Product factors used, or quadrature levels for the integral route.
    #[getter]
    fn effort(&self) -> usize {
        self.0.effort
    }

    #[getter]
    fn error_estimate(&self) -> f64 {
        self.0.error_estimate
    }

    #[getter]
    fn divergent(&self) -> bool {
        self.0.divergent
    }

    fn __float__(&self) -> f64 {
        self.0.value
    }

    fn __repr__(&self) -> String {
        let r = &self.0;
        format!(
            "EvalResult(value={:?}, method='{}', effort={}, error_estimate={:e}, divergent={})",
            r.value,
            r.method,
            r.effort,
            r.error_estimate,
            if r.divergent { "True" } else { "False" }
        )
    }
}

fn alpha_strategy(alpha: &Bound<'_, PyAny>) -> PyResult<core::AlphaStrategy> {
    if let Ok(x) = alpha.extract::<f64>() {
        return Ok(core::AlphaStrategy::Custom(x));
    }
    match alpha.extract::<String>()?.as_str() {
        "a" => Ok(core::AlphaStrategy::DefaultA),
        "accel" => Ok(core::AlphaStrategy::Accelerated),
        other => Err(PyValueError::new_err(format!(
            "alpha must be 'a', 'accel' or a positive number, got {other:?}"
        ))),
    }
}

fn quadrature(tol: f64, max_level: usize) -> PyResult<core::QuadratureSpec> {
    core::QuadratureSpec::new(tol, max_level).map_err(to_py)
}

/// `Δ:n` by the merged infinite product. A divergent index gives a result
/// with `divergent=True` and an infinite value. `terms` switches from the
/// adaptive rule to a fixed number of factors.
#[pyfunction]
#[pyo3(signature = (params, n, alpha = None, tol = 1e-10, terms = None))]
fn eval_product(
    params: &PySeriesParams,
    n: f64,
    alpha: Option<&Bound<'_, PyAny>>,
    tol: f64,
    terms: Option<usize>,
) -> PyResult<PyEvalResult> {
    let strategy = alpha
        .map(alpha_strategy)
        .transpose()?
        .unwrap_or(core::AlphaStrategy::DefaultA);
    let trunc = match terms {
        Some(i) => core::TruncationSpec::fixed(i),
        None => core::TruncationSpec::adaptive(tol),
    }
    .map_err(to_py)?;
    match core::validate(params.0, n).map_err(to_py)? {
        core::Validated::Divergent(_) => Ok(PyEvalResult(core::EvalResult::divergent(
            core::Method::Product,
        ))),
        core::Validated::Problem(p) => core::eval_product(&p, strategy, trunc)
            .map(PyEvalResult)
            .map_err(to_py),
    }
}

/// `Δ:½` from the quadrature of two Beta-type integrals.
#[pyfunction]
#[pyo3(signature = (params, tol = 1e-12, max_level = 12))]
fn eval_half(params: &PySeriesParams, tol: f64, max_level: usize) -> PyResult<PyEvalResult> {
    core::eval_half(params.0, quadrature(tol, max_level)?)
        .map(PyEvalResult)
        .map_err(to_py)
}

/// `Δ:⅓` from four integrals; needs `a > b/3`.
#[pyfunction]
#[pyo3(signature = (params, tol = 1e-12, max_level = 12))]
fn eval_third(params: &PySeriesParams, tol: f64, max_level: usize) -> PyResult<PyEvalResult> {
    core::eval_third(params.0, quadrature(tol, max_level)?)
        .map(PyEvalResult)
        .map_err(to_py)
}

/// `bⁿ·Γ(a/b + n)/Γ(a/b)`.
#[pyfunction]
fn gamma_oracle(params: &PySeriesParams, n: f64) -> PyResult<f64> {
    core::gamma_oracle(params.0, n).map_err(to_py)
}

/// `a(a+b)…(a+(k−1)b)`.
#[pyfunction]
fn direct_term(params: &PySeriesParams, k: u64) -> PyResult<f64> {
    core::direct_term(params.0, k).map_err(to_py)
}

/// `Δ:(n+m)` from `Δ:n`.
#[pyfunction]
fn shift(params: &PySeriesParams, n: f64, m: u64, value: f64) -> PyResult<f64> {
    core::shift(params.0, n, m, value).map_err(to_py)
}

/// `Δ:(n−m)` from `Δ:n`.
#[pyfunction]
fn shift_back(params: &PySeriesParams, n: f64, m: u64, value: f64) -> PyResult<f64> {
    core::shift_back(params.0, n, m, value).map_err(to_py)
}

/// `∫₀¹ x^{p−1}(1−x^step)^{m/step−1} dx`.
#[pyfunction]
#[pyo3(signature = (p, m, step, tol = 1e-12, max_level = 12))]
fn pq_integral(p: f64, m: f64, step: f64, tol: f64, max_level: usize) -> PyResult<f64> {
    let spec = core::PQSpec::new(p, m, step).map_err(to_py)?;
    Ok(core::pq_integral(spec, quadrature(tol, max_level)?)
        .map_err(to_py)?
        .value)
}

/// `∏_{k<terms} (q+k·step)(m+p+k·step)/((p+k·step)(m+q+k·step))`.
#[pyfunction]
fn pq_ratio_product(p: f64, q: f64, m: f64, step: f64, terms: u64) -> PyResult<f64> {
    core::pq_ratio_product(p, q, m, step, terms).map_err(to_py)
}

/// `Δ:n/Γ:n` for two progressions with first terms `a`, `c` and common
/// difference `b`. `method` is `"product"` or `"integral"` (0 < n < 1 only).
#[pyfunction]
#[pyo3(signature = (a, c, b, n, method = "product", tol = 1e-10))]
fn quotient(a: f64, c: f64, b: f64, n: f64, method: &str, tol: f64) -> PyResult<f64> {
    let qp = core::QuotientParams::new(a, c, b, n).map_err(to_py)?;
    match method {
        "product" => {
            let trunc = core::TruncationSpec::adaptive(tol).map_err(to_py)?;
            Ok(core::quotient_term_product(qp, trunc).map_err(to_py)?.value)
        }
        "integral" => {
            core::quotient_term_integral(qp, core::QuadratureSpec::default()).map_err(to_py)
        }
        other => Err(PyValueError::new_err(format!("unknown method {other:?}"))),
    }
}

#[pymodule]
fn hyperterm(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySeriesParams>()?;
    m.add_class::<PyEvalResult>()?;
    m.add("DivergentError", m.py().get_type::<DivergentError>())?;
    m.add(
        "NoConvergenceError",
        m.py().get_type::<NoConvergenceError>(),
    )?;
    m.add_function(wrap_pyfunction!(eval_product, m)?)?;
    m.add_function(wrap_pyfunction!(eval_half, m)?)?;
    m.add_function(wrap_pyfunction!(eval_third, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(direct_term, m)?)?;
    m.add_function(wrap_pyfunction!(shift, m)?)?;
    m.add_function(wrap_pyfunction!(shift_back, m)?)?;
    m.add_function(wrap_pyfunction!(pq_integral, m)?)?;
    m.add_function(wrap_pyfunction!(pq_ratio_product, m)?)?;
    m.add_function(wrap_pyfunction!(quotient, m)?)?;
    Ok(())
}
