//! Python bindings for `freefield`.

use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use freefield::harness::checks::{self, CheckConfig};
use freefield::harness::oracle::{self, TruncationSpec};
use freefield::harness::parse::parse_cochain;
use freefield::operad::parse_rational;
use freefield::reduction::verify_certificate;
use freefield::{dquantum, normal_form, Interval, ModelParams, Scalar, StarGeometry, Window};

fn value_error<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rational(s: &str) -> PyResult<num_rational::BigRational> {
    parse_rational(s).ok_or_else(|| PyValueError::new_err(format!("expected p/q, got '{s}'")))
}

/// `None` keeps a parameter symbolic.
fn params(alpha: Option<&str>, hbar: Option<&str>) -> PyResult<ModelParams> {
    let a = match alpha {
        Some(s) => Scalar::from_rational(rational(s)?),
        None => Scalar::alpha(),
    };
    let h = match hbar {
        Some(s) => Scalar::from_rational(rational(s)?),
        None => Scalar::hbar(),
    };
    ModelParams::new(a, h).map_err(value_error)
}

fn interval(s: &str) -> PyResult<Interval> {
    s.parse().map_err(value_error)
}

/// A cochain, built from the expression grammar.
#[pyclass(name = "Cochain", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyCochain(freefield::Cochain);

#[pymethods]
impl PyCochain {
    #[new]
    fn new(expr: &str) -> PyResult<Self> {
        parse_cochain(expr).map(Self).map_err(value_error)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Cochain('{}')", self.0)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __add__(&self, other: &Self) -> Self {
        Self(&self.0 + &other.0)
    }

    fn __sub__(&self, other: &Self) -> Self {
        Self(&self.0 - &other.0)
    }

    fn __mul__(&self, other: &Self) -> Self {
        Self(&self.0 * &other.0)
    }

    fn __neg__(&self) -> Self {
        Self(-&self.0)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `d + hbar Delta` applied to the cochain.
    #[pyo3(signature = (alpha=None, hbar=None))]
    fn dquantum(&self, alpha: Option<&str>, hbar: Option<&str>) -> PyResult<Self> {
        Ok(Self(dquantum(&self.0, &params(alpha, hbar)?)))
    }
}

/// Star product on degree-0 classes in a fixed geometry.
#[pyclass(name = "StarAlgebra")]
struct PyStarAlgebra(freefield::StarAlgebra);

#[pymethods]
impl PyStarAlgebra {
    #[new]
    #[pyo3(signature = (alpha=None, hbar=None, geometry="default"))]
    fn new(alpha: Option<&str>, hbar: Option<&str>, geometry: &str) -> PyResult<Self> {
        let g = StarGeometry::by_name(geometry)
            .ok_or_else(|| PyValueError::new_err(format!("unknown geometry '{geometry}'")))?;
        freefield::StarAlgebra::new(params(alpha, hbar)?, g)
            .map(Self)
            .map_err(value_error)
    }

    /// Canonical form of the class of `x`.
    fn canonical(&mut self, x: &PyCochain) -> PyResult<PyCochain> {
        let c = self.0.class(&x.0).map_err(value_error)?;
        Ok(PyCochain(c.canonical().clone()))
    }

    /// Canonical form of `[x] * [y]`.
    fn star(&mut self, x: &PyCochain, y: &PyCochain) -> PyResult<PyCochain> {
        let cx = self.0.class(&x.0).map_err(value_error)?;
        let cy = self.0.class(&y.0).map_err(value_error)?;
        let z = self.0.star(&cx, &cy).map_err(value_error)?;
        Ok(PyCochain(z.canonical().clone()))
    }

    /// The class of `x` written in the Weyl algebra, e.g. `q*p + hbar`.
    #[allow(clippy::wrong_self_convention)]
    fn to_weyl(&mut self, x: &PyCochain) -> PyResult<String> {
        let c = self.0.class(&x.0).map_err(value_error)?;
        self.0.class_to_weyl(&c).map(|w| w.to_string()).map_err(value_error)
    }
}

/// Normal form of `expr` in the window `{window, window+1}`, with its homotopy.
#[pyfunction]
#[pyo3(signature = (expr, interval="-4,4", window=0, alpha=None, hbar=None))]
fn reduce<'py>(
    py: Python<'py>,
    expr: &str,
    interval: &str,
    window: i64,
    alpha: Option<&str>,
    hbar: Option<&str>,
) -> PyResult<Bound<'py, PyDict>> {
    let p = params(alpha, hbar)?;
    let c = parse_cochain(expr).map_err(value_error)?;
    let i: Interval = self::interval(interval)?;
    let cert = normal_form(&c, &i, Window::new(window), &p).map_err(value_error)?;
    let out = PyDict::new(py);
    out.set_item("normal_form", cert.normal_form.to_string())?;
    out.set_item("homotopy", cert.homotopy.to_string())?;
    out.set_item("verified", verify_certificate(&cert, &p))?;
    Ok(out)
}

/// Cohomology dimensions of the truncated complex, keyed by degree.
#[pyfunction]
#[pyo3(signature = (interval, maxdeg, hbar="1", alpha="1"))]
fn cohomology<'py>(py: Python<'py>, interval: &str, maxdeg: u32, hbar: &str, alpha: &str) -> PyResult<Bound<'py, PyDict>> {
    let spec = TruncationSpec::new(self::interval(interval)?, maxdeg, rational(hbar)?, rational(alpha)?)
        .map_err(value_error)?;
    let dims = oracle::cohomology_oracle(&spec).map_err(value_error)?;
    let out = PyDict::new(py);
    for (k, v) in dims {
        out.set_item(k, v)?;
    }
    Ok(out)
}

#[pyfunction]
fn check_ids() -> Vec<&'static str> {
    checks::check_ids().collect()
}

/// Runs one check and returns its report entry as a dict.
#[pyfunction]
#[pyo3(signature = (id, alpha=None, hbar=None, seed=0))]
fn run_check<'py>(py: Python<'py>, id: &str, alpha: Option<&str>, hbar: Option<&str>, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let cfg = CheckConfig {
        alpha: alpha.map(rational).transpose()?,
        hbar: hbar.map(rational).transpose()?,
        seed,
    };
    let r = py
        .detach(|| checks::run_check(id, &cfg))
        .map_err(|e| PyKeyError::new_err(e.to_string()))?;
    let text = serde_json::to_string(&r).map_err(value_error)?;
    py.import("json")?.call_method1("loads", (text,))
}

/// Canonical rendering of an expression.
#[pyfunction]
fn parse(expr: &str) -> PyResult<String> {
    parse_cochain(expr).map(|c| c.to_string()).map_err(value_error)
}

#[pymodule]
pub fn freefield_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCochain>()?;
    m.add_class::<PyStarAlgebra>()?;
    m.add_function(wrap_pyfunction!(reduce, m)?)?;
    m.add_function(wrap_pyfunction!(cohomology, m)?)?;
    m.add_function(wrap_pyfunction!(check_ids, m)?)?;
    m.add_function(wrap_pyfunction!(run_check, m)?)?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
