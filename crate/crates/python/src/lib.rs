//! Python bindings: `import kurepa`.

use kurepa_core::bounds as b;
use kurepa_core::verify::{run_suite as run_core_suite, Suite};
use kurepa_core::{ComplexValue, KurepaError as CoreError, Method, Route};
use num_bigint::BigUint;
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(kurepa, KurepaError, PyException, "Base class for errors raised by kurepa.");
create_exception!(kurepa, PoleError, KurepaError, "Argument at (or within tolerance of) a pole.");
create_exception!(kurepa, DomainError, KurepaError, "Argument outside the domain of the operation.");
create_exception!(kurepa, ConvergenceError, KurepaError, "Quadrature did not reach the requested tolerance.");
create_exception!(kurepa, SingularArgumentError, KurepaError, "Argument in the excluded integer set.");

fn err(e: CoreError) -> PyErr {
    let msg = e.to_string();
    match e {
        CoreError::Pole { .. } => PoleError::new_err(msg),
        CoreError::Domain(_) => DomainError::new_err(msg),
        CoreError::Convergence { .. } => ConvergenceError::new_err(msg),
        CoreError::SingularArgument { .. } => SingularArgumentError::new_err(msg),
    }
}

fn parse_method(name: Option<&str>) -> PyResult<Option<Method>> {
    Ok(match name.map(str::to_ascii_lowercase).as_deref() {
        None | Some("auto") => None,
        Some("series") | Some("exactseries") => Some(Method::ExactSeries),
        Some("quadrature") => Some(Method::Quadrature),
        Some("continuation") => Some(Method::Continuation),
        Some(other) => return Err(DomainError::new_err(format!("unknown method {other:?}"))),
    })
}

fn parse_route(name: &str) -> PyResult<Route> {
    match name.to_ascii_lowercase().as_str() {
        "explicit" => Ok(Route::Explicit),
        "recurrence" => Ok(Route::Recurrence),
        other => Err(DomainError::new_err(format!("unknown route {other:?}"))),
    }
}

/// Settings for the integral representation of K.
#[pyclass(module = "kurepa", get_all, set_all)]
struct QuadratureConfig {
    split_delta: f64,
    tail_cutoff: f64,
    abs_tol: f64,
    max_subdivisions: usize,
}

#[pymethods]
impl QuadratureConfig {
    #[new]
    #[pyo3(signature = (split_delta=None, tail_cutoff=None, abs_tol=None, max_subdivisions=None))]
    fn new(
        split_delta: Option<f64>,
        tail_cutoff: Option<f64>,
        abs_tol: Option<f64>,
        max_subdivisions: Option<usize>,
    ) -> PyResult<Self> {
        let d = kurepa_core::QuadratureConfig::default();
        let cfg = Self {
            split_delta: split_delta.unwrap_or(d.split_delta),
            tail_cutoff: tail_cutoff.unwrap_or(d.tail_cutoff),
            abs_tol: abs_tol.unwrap_or(d.abs_tol),
            max_subdivisions: max_subdivisions.unwrap_or(d.max_subdivisions),
        };
        cfg.core()?;
        Ok(cfg)
    }

    fn __repr__(&self) -> String {
        format!(
            "QuadratureConfig(split_delta={}, tail_cutoff={}, abs_tol={:e}, max_subdivisions={})",
            self.split_delta, self.tail_cutoff, self.abs_tol, self.max_subdivisions
        )
    }
}

impl QuadratureConfig {
    fn core(&self) -> PyResult<kurepa_core::QuadratureConfig> {
        let cfg = kurepa_core::QuadratureConfig {
            split_delta: self.split_delta,
            tail_cutoff: self.tail_cutoff,
            abs_tol: self.abs_tol,
            max_subdivisions: self.max_subdivisions,
        };
        cfg.validate().map_err(err)?;
        Ok(cfg)
    }
}

fn config(cfg: Option<PyRef<'_, QuadratureConfig>>) -> PyResult<kurepa_core::QuadratureConfig> {
    cfg.map_or_else(|| Ok(kurepa_core::QuadratureConfig::default()), |c| c.core())
}

/// K(z) with an error estimate and the method that produced it.
#[pyclass(module = "kurepa", frozen, get_all)]
struct KurepaValue {
    value: ComplexValue,
    abs_err_estimate: f64,
    method: &'static str,
}

#[pymethods]
impl KurepaValue {
    fn __repr__(&self) -> String {
        format!(
            "KurepaValue(value={}, abs_err_estimate={:e}, method='{}')",
            self.value, self.abs_err_estimate, self.method
        )
    }

    fn __complex__(&self) -> ComplexValue {
        self.value
    }
}

impl From<kurepa_core::KurepaValue> for KurepaValue {
    fn from(v: kurepa_core::KurepaValue) -> Self {
        Self {
            value: v.value,
            abs_err_estimate: v.abs_err_estimate,
            method: v.method.as_str(),
        }
    }
}

/// One point of the two-sided bound A_k(x) < K(x)/Γ(x+1) ≤ B_k(x).
#[pyclass(module = "kurepa", frozen, get_all)]
struct BoundReport {
    k: u32,
    x: f64,
    a_k: f64,
    b_k: f64,
    ratio: f64,
    left_ok: bool,
    right_ok: bool,
    right_equality: bool,
    gap: f64,
}

#[pymethods]
impl BoundReport {
    #[getter]
    fn left_margin(&self) -> f64 {
        self.ratio - self.a_k
    }

    #[getter]
    fn right_margin(&self) -> f64 {
        self.b_k - self.ratio
    }

    fn __repr__(&self) -> String {
        format!(
            "BoundReport(k={}, x={}, a_k={}, b_k={}, ratio={}, left_ok={}, right_ok={}, right_equality={}, gap={:e})",
            self.k,
            self.x,
            self.a_k,
            self.b_k,
            self.ratio,
            py_bool(self.left_ok),
            py_bool(self.right_ok),
            py_bool(self.right_equality),
            self.gap
        )
    }
}

fn py_bool(v: bool) -> &'static str {
    if v {
        "True"
    } else {
        "False"
    }
}

impl From<b::BoundReport> for BoundReport {
    fn from(r: b::BoundReport) -> Self {
        Self {
            k: r.k,
            x: r.x,
            a_k: r.a_k,
            b_k: r.b_k,
            ratio: r.ratio,
            left_ok: r.left_ok,
            right_ok: r.right_ok,
            right_equality: r.right_equality,
            gap: r.gap,
        }
    }
}

#[pyfunction]
fn gamma(z: ComplexValue) -> PyResult<ComplexValue> {
    kurepa_core::gamma(z).map_err(err)
}

#[pyfunction]
fn log_gamma(x: f64) -> PyResult<f64> {
    kurepa_core::log_gamma(x).map_err(err)
}

/// Residue of Γ at −n, (−1)^n/n!.
#[pyfunction]
fn gamma_residue(n: u32) -> f64 {
    kurepa_core::gamma_residue(n)
}

/// K(n) = 0! + 1! + … + (n−1)! as a Python int.
#[pyfunction]
fn left_factorial_exact(n: u64) -> BigUint {
    kurepa_core::left_factorial_exact(n).value
}

#[pyfunction]
#[pyo3(signature = (z, method=None, config=None))]
fn kurepa(z: ComplexValue, method: Option<&str>, config: Option<PyRef<'_, QuadratureConfig>>) -> PyResult<KurepaValue> {
    let cfg = self::config(config)?;
    kurepa_core::kurepa_with(z, parse_method(method)?, &cfg)
        .map(Into::into)
        .map_err(err)
}

#[pyfunction]
#[pyo3(signature = (z, config=None))]
fn kurepa_integral(z: ComplexValue, config: Option<PyRef<'_, QuadratureConfig>>) -> PyResult<KurepaValue> {
    let cfg = self::config(config)?;
    kurepa_core::kurepa_integral(z, &cfg).map(Into::into).map_err(err)
}

/// K′(x) for x in [0, 1].
#[pyfunction]
#[pyo3(signature = (x, config=None))]
fn kurepa_derivative(x: f64, config: Option<PyRef<'_, QuadratureConfig>>) -> PyResult<f64> {
    let cfg = self::config(config)?;
    kurepa_core::kurepa_derivative_with(x, &cfg).map_err(err)
}

/// Residue of K at −n (0 at the removable point −2).
#[pyfunction]
fn kurepa_residue(n: u32) -> f64 {
    kurepa_core::kurepa_residue(n)
}

#[pyfunction]
#[pyo3(signature = (n, z, route="explicit"))]
fn p_n(n: u32, z: ComplexValue, route: &str) -> PyResult<ComplexValue> {
    Ok(kurepa_core::p_n(n, z, parse_route(route)?).map_err(err)?.value)
}

#[pyfunction]
#[pyo3(signature = (n, z, route="explicit"))]
fn q_n(n: u32, z: ComplexValue, route: &str) -> PyResult<ComplexValue> {
    Ok(kurepa_core::q_n(n, z, parse_route(route)?).map_err(err)?.value)
}

#[pyfunction]
#[pyo3(signature = (n, z, route="explicit"))]
fn r_n(n: u32, z: ComplexValue, route: &str) -> PyResult<ComplexValue> {
    Ok(kurepa_core::r_n(n, z, parse_route(route)?).map_err(err)?.value)
}

/// Σ_{i<k} Γ(x − i) for x > k.
#[pyfunction]
fn g_k(k: u32, x: f64) -> PyResult<f64> {
    kurepa_core::g_k(k, x).map_err(err)
}

/// Scaled residual of K(z) − K(z − n) = (P_n(z) − 1) Γ(z − n).
#[pyfunction]
fn verify_theorem1(n: u32, z: ComplexValue) -> PyResult<f64> {
    kurepa_core::verify_theorem1(n, z).map_err(err)
}

/// Scaled residuals of the Q form and the R form of K(z) − K(z − n).
#[pyfunction]
fn verify_theorem2(n: u32, z: ComplexValue) -> PyResult<(f64, f64)> {
    kurepa_core::verify_theorem2(n, z).map_err(err)
}

#[pyfunction]
fn gamma_p5_approx(x: f64) -> PyResult<f64> {
    b::gamma_p5_approx(x).map_err(err)
}

#[pyfunction]
fn lemma4_check<'py>(py: Python<'py>, x: f64) -> PyResult<Bound<'py, PyDict>> {
    let c = b::lemma4_check(x).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("ineq1_ok", c.ineq1_ok)?;
    d.set_item("ineq2_ok", c.ineq2_ok)?;
    d.set_item("margins", c.margins)?;
    Ok(d)
}

#[pyfunction]
fn karamata_bound<'py>(py: Python<'py>, t: f64) -> PyResult<Bound<'py, PyDict>> {
    let c = b::karamata_bound(t).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("lhs", c.lhs)?;
    d.set_item("rhs", c.rhs)?;
    d.set_item("ok", c.ok)?;
    Ok(d)
}

#[pyfunction]
fn lemma5_check<'py>(py: Python<'py>, x: f64) -> PyResult<Bound<'py, PyDict>> {
    let c = b::lemma5_check(x).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("kx", c.kx)?;
    d.set_item("bound", c.bound)?;
    d.set_item("ok", c.ok)?;
    Ok(d)
}

#[pyfunction]
fn theorem3_check<'py>(py: Python<'py>, x: f64) -> PyResult<Bound<'py, PyDict>> {
    let c = b::theorem3_check(x).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("lhs", c.lhs)?;
    d.set_item("rhs", c.rhs)?;
    d.set_item("ok", c.ok)?;
    d.set_item("kx", c.kx)?;
    d.set_item("doubled_ok", c.doubled_ok)?;
    d.set_item("arandelovic_rhs", c.arandelovic_rhs)?;
    d.set_item("relative_improvement", c.relative_improvement)?;
    Ok(d)
}

/// K(x)/Γ(x + 1) for x > 0 without forming either factor.
#[pyfunction]
fn normalized_ratio(x: f64) -> PyResult<f64> {
    b::normalized_ratio(x).map_err(err)
}

#[pyfunction]
fn corollary_ratio<'py>(py: Python<'py>, k: u32, x: f64) -> PyResult<Bound<'py, PyDict>> {
    let c = b::corollary_ratio(k, x).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("ratio", c.ratio)?;
    d.set_item("ok", c.ok)?;
    d.set_item("equality", c.equality)?;
    Ok(d)
}

#[pyfunction]
fn sandwich_bounds(k: u32, x: f64) -> PyResult<BoundReport> {
    b::sandwich_bounds(k, x).map(Into::into).map_err(err)
}

#[pyfunction]
fn nesting_check<'py>(py: Python<'py>, k: u32, x: f64) -> PyResult<Bound<'py, PyDict>> {
    let c = b::nesting_check(k, x).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("ok", c.ok)?;
    d.set_item("margins", c.margins.to_vec())?;
    Ok(d)
}

/// (x, x·A_k(x), x^k·(B_k − A_k)(x)) per abscissa.
#[pyfunction]
fn asymptotic_diagnostics(k: u32, xs: Vec<f64>) -> PyResult<Vec<(f64, f64, f64)>> {
    Ok(b::asymptotic_diagnostics(k, &xs)
        .map_err(err)?
        .into_iter()
        .map(|r| (r.x, r.scaled_lower, r.scaled_gap))
        .collect())
}

/// Run one property suite; one dict per property.
#[pyfunction]
#[pyo3(signature = (suite, seed=1))]
fn run_suite<'py>(py: Python<'py>, suite: &str, seed: u64) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let suite: Suite = suite.parse().map_err(DomainError::new_err)?;
    run_core_suite(suite, seed)
        .into_iter()
        .map(|o| {
            let d = PyDict::new(py);
            d.set_item("suite", o.suite.name())?;
            d.set_item("property", o.property)?;
            d.set_item("kind", o.kind.as_str())?;
            d.set_item("checks", o.checks)?;
            d.set_item("failures", o.failures)?;
            d.set_item("worst", o.worst)?;
            d.set_item("threshold", o.threshold)?;
            d.set_item("passed", o.passed())?;
            Ok(d)
        })
        .collect()
}

#[pymodule(name = "kurepa")]
fn kurepa_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("KurepaError", py.get_type::<KurepaError>())?;
    m.add("PoleError", py.get_type::<PoleError>())?;
    m.add("DomainError", py.get_type::<DomainError>())?;
    m.add("ConvergenceError", py.get_type::<ConvergenceError>())?;
    m.add("SingularArgumentError", py.get_type::<SingularArgumentError>())?;
    m.add("POLE_TOLERANCE", kurepa_core::POLE_TOLERANCE)?;
    m.add_class::<QuadratureConfig>()?;
    m.add_class::<KurepaValue>()?;
    m.add_class::<BoundReport>()?;
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(log_gamma, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_residue, m)?)?;
    m.add_function(wrap_pyfunction!(left_factorial_exact, m)?)?;
    m.add_function(wrap_pyfunction!(kurepa, m)?)?;
    m.add_function(wrap_pyfunction!(kurepa_integral, m)?)?;
    m.add_function(wrap_pyfunction!(kurepa_derivative, m)?)?;
    m.add_function(wrap_pyfunction!(kurepa_residue, m)?)?;
    m.add_function(wrap_pyfunction!(p_n, m)?)?;
    m.add_function(wrap_pyfunction!(q_n, m)?)?;
    m.add_function(wrap_pyfunction!(r_n, m)?)?;
    m.add_function(wrap_pyfunction!(g_k, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theorem1, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theorem2, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_p5_approx, m)?)?;
    m.add_function(wrap_pyfunction!(lemma4_check, m)?)?;
    m.add_function(wrap_pyfunction!(karamata_bound, m)?)?;
    m.add_function(wrap_pyfunction!(lemma5_check, m)?)?;
    m.add_function(wrap_pyfunction!(theorem3_check, m)?)?;
    m.add_function(wrap_pyfunction!(normalized_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(corollary_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(sandwich_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(nesting_check, m)?)?;
    m.add_function(wrap_pyfunction!(asymptotic_diagnostics, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}
