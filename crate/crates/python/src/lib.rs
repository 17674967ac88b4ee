//! Python bindings. Exact values come back as `fractions.Fraction`.

use hurwitz_core::chambers::{
    chamber_signature as core_signature, sample_across, symbolic_polynomial, wall_crossing_lhs,
    wall_crossing_rhs, ChamberPolynomial as CoreChamberPolynomial, Wall, WallCrossingSpec,
};
use hurwitz_core::partitions::{find_wall, format_index_set, hurwitz_oracle as core_oracle};
use hurwitz_core::patterns::{
    closed_form as core_closed_form, hurwitz_number_with, is_totally_negative as core_negative,
    product_formula as core_product,
};
use hurwitz_core::rational::factorial;
use hurwitz_core::verify::{run_suite, Suite, VerifyOptions};
use hurwitz_core::{Error, HurwitzInput, LaurentSeries, Ordering, Rational};
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

create_exception!(
    hurwitz,
    OnWallError,
    PyValueError,
    "The input lies on a wall of the resonance arrangement."
);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::OnWall(_) | Error::SubInputOnWall(_) => OnWallError::new_err(e.to_string()),
        Error::SingularSystem { .. } | Error::InconsistentData | Error::CutoffTooSmall { .. } => {
            PyRuntimeError::new_err(e.to_string())
        }
        other => PyValueError::new_err(other.to_string()),
    }
}

fn fraction(py: Python<'_>, q: &Rational) -> PyResult<PyObject> {
    let cls = py.import("fractions")?.getattr("Fraction")?;
    Ok(cls.call1((q.numer().clone(), q.denom().clone()))?.unbind())
}

fn input(mu: Vec<u64>, nu: Vec<u64>) -> PyResult<HurwitzInput> {
    HurwitzInput::new(mu, nu).map_err(to_py)
}

fn branch_points(h: &HurwitzInput, r: Option<u32>, g: Option<u32>) -> PyResult<u32> {
    let from_g = g.map(|g| h.r_for_genus(g as u64) as u32);
    match (r, from_g) {
        (Some(r), Some(rg)) if r != rg => Err(PyValueError::new_err(format!(
            "r = {r} and g give r = {rg}"
        ))),
        (Some(r), _) | (None, Some(r)) => Ok(r),
        (None, None) => Err(PyValueError::new_err("pass r or g")),
    }
}

fn ordering(text: Option<&str>) -> PyResult<Option<Ordering>> {
    text.map(Ordering::parse).transpose().map_err(to_py)
}

fn coefficients(py: Python<'_>, s: &LaurentSeries) -> PyResult<Vec<(i64, PyObject)>> {
    s.terms().map(|(k, c)| Ok((k, fraction(py, c)?))).collect()
}

/// The wall `(I, J)` the input lies on, as 1-based sets, or `None`.
#[pyfunction]
fn wall(mu: Vec<u64>, nu: Vec<u64>) -> PyResult<Option<String>> {
    let h = input(mu, nu)?;
    Ok(
        find_wall(&h)
            .map(|(i, j)| format!("W_{{{},{}}}", format_index_set(i), format_index_set(j))),
    )
}

/// `H^r(μ, ν)` from the closed form. Pass `r` or `g`.
#[pyfunction]
#[pyo3(signature = (mu, nu, r=None, g=None, ordering=None))]
fn hurwitz_number(
    py: Python<'_>,
    mu: Vec<u64>,
    nu: Vec<u64>,
    r: Option<u32>,
    g: Option<u32>,
    ordering: Option<&str>,
) -> PyResult<PyObject> {
    let h = input(mu, nu)?;
    let r = branch_points(&h, r, g)?;
    let order = self::ordering(ordering)?;
    let v = py
        .allow_threads(|| hurwitz_number_with(&h, r, order.as_ref(), r as i64 + 2))
        .map_err(to_py)?;
    fraction(py, &v)
}

/// `H^r(μ, ν)` from the character sum; on a wall this counts disconnected
/// covers.
#[pyfunction]
#[pyo3(signature = (mu, nu, r=None, g=None))]
fn hurwitz_oracle(
    py: Python<'_>,
    mu: Vec<u64>,
    nu: Vec<u64>,
    r: Option<u32>,
    g: Option<u32>,
) -> PyResult<PyObject> {
    let h = input(mu, nu)?;
    let r = branch_points(&h, r, g)?;
    let v = py.allow_threads(|| core_oracle(&h, r));
    fraction(py, &v)
}

/// The closed form of `H_{μ,ν}(z)`: a sum over commutation patterns of
/// products of `ς` factors.
#[pyclass(module = "hurwitz", frozen)]
struct ClosedForm {
    inner: hurwitz_core::ClosedForm,
}

#[pymethods]
impl ClosedForm {
    #[new]
    #[pyo3(signature = (mu, nu, ordering=None))]
    fn new(mu: Vec<u64>, nu: Vec<u64>, ordering: Option<&str>) -> PyResult<Self> {
        let h = input(mu, nu)?;
        let order = self::ordering(ordering)?;
        let inner = core_closed_form(&h, order.as_ref()).map_err(to_py)?;
        Ok(ClosedForm { inner })
    }

    #[getter]
    fn num_patterns(&self) -> usize {
        self.inner.num_patterns()
    }

    #[getter]
    fn ordering(&self) -> String {
        self.inner.ordering.to_string()
    }

    /// `ς` arguments of each pattern at the stored input.
    fn sigma_args(&self) -> Vec<Vec<i128>> {
        self.inner
            .patterns
            .iter()
            .map(|p| p.sigma_args(&self.inner.input))
            .collect()
    }

    /// `[(k, [z^k] H_{μ,ν}(z))]` through `z^order` at the stored input.
    fn series(&self, py: Python<'_>, order: i64) -> PyResult<Vec<(i64, PyObject)>> {
        let s = self
            .inner
            .evaluate_series(&self.inner.input, order)
            .map_err(to_py)?;
        coefficients(py, &s)
    }

    /// Hurwitz numbers `H^k = k! [z^k]` through `k = order`.
    fn hurwitz_numbers(&self, py: Python<'_>, order: i64) -> PyResult<Vec<(i64, PyObject)>> {
        let s = self
            .inner
            .evaluate_series(&self.inner.input, order)
            .map_err(to_py)?;
        s.terms()
            .filter(|&(k, _)| k >= 0)
            .map(|(k, c)| {
                let v = c * Rational::from_integer(factorial(k as u64));
                Ok((k, fraction(py, &v)?))
            })
            .collect()
    }

    #[pyo3(signature = (symbolic=true))]
    fn to_latex(&self, symbolic: bool) -> String {
        if symbolic {
            self.inner.to_latex_symbolic()
        } else {
            self.inner.to_latex_numeric()
        }
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.inner.to_json()).expect("closed forms serialize")
    }

    fn __str__(&self) -> String {
        self.inner.to_text()
    }

    fn __repr__(&self) -> String {
        format!(
            "ClosedForm({}, ordering='{}', patterns={})",
            self.inner.input,
            self.inner.ordering,
            self.inner.num_patterns()
        )
    }
}

/// `[(wall, sign)]` for every wall of the resonance arrangement.
#[pyfunction]
fn chamber_signature(mu: Vec<u64>, nu: Vec<u64>) -> PyResult<Vec<(String, i8)>> {
    let h = input(mu, nu)?;
    let sig = core_signature(&h).map_err(to_py)?;
    Ok(sig.signs.iter().map(|(w, s)| (w.to_string(), *s)).collect())
}

#[pyfunction]
fn is_totally_negative(mu: Vec<u64>, nu: Vec<u64>) -> PyResult<bool> {
    core_negative(&input(mu, nu)?).map_err(to_py)
}

/// `ς` arguments of the single pattern of a totally negative chamber.
#[pyfunction]
fn product_formula(mu: Vec<u64>, nu: Vec<u64>) -> PyResult<Vec<i128>> {
    core_product(&input(mu, nu)?).map_err(to_py)
}

/// `H^r` as a polynomial on the chamber of a sample input, in the variables
/// `μ_1..μ_m, ν_1..ν_{n−1}`.
#[pyclass(module = "hurwitz", frozen)]
struct ChamberPolynomial {
    inner: CoreChamberPolynomial,
}

#[pymethods]
impl ChamberPolynomial {
    #[new]
    fn new(py: Python<'_>, mu: Vec<u64>, nu: Vec<u64>, g: u32) -> PyResult<Self> {
        let h = input(mu, nu)?;
        let inner = py
            .allow_threads(|| symbolic_polynomial(&h, g))
            .map_err(to_py)?;
        Ok(ChamberPolynomial { inner })
    }

    #[getter]
    fn variables(&self) -> Vec<String> {
        self.inner.variable_names()
    }

    #[getter]
    fn g(&self) -> u32 {
        self.inner.g
    }

    #[getter]
    fn r(&self) -> u32 {
        self.inner.r
    }

    /// `{k: P_{g,k}}` as text.
    fn components(&self) -> Vec<(u32, String)> {
        let names = self.inner.variable_names();
        self.inner
            .components
            .iter()
            .map(|(k, p)| (*k, p.format_with(&names)))
            .collect()
    }

    /// The polynomial at `(μ, ν)`, which must lie in the same chamber.
    fn evaluate(&self, py: Python<'_>, mu: Vec<u64>, nu: Vec<u64>) -> PyResult<PyObject> {
        let h = input(mu, nu)?;
        if !self.inner.chamber.contains(&h) {
            return Err(to_py(Error::ChamberMismatch(h.to_string())));
        }
        let v = self.inner.polynomial.eval(&h.reduced_coordinates());
        fraction(py, &v)
    }

    fn __str__(&self) -> String {
        self.inner
            .polynomial
            .format_with(&self.inner.variable_names())
    }

    fn __repr__(&self) -> String {
        format!(
            "ChamberPolynomial(g={}, r={}, chamber='{}')",
            self.inner.g, self.inner.r, self.inner.chamber
        )
    }
}

/// Both sides of the wall-crossing formula at `(μ, ν)` through `z^order`.
/// `wall` is `(I, J)` with 1-based index lists.
#[pyfunction]
#[pyo3(signature = (mu, nu, wall, order=10, seed=0))]
fn wall_crossing(
    py: Python<'_>,
    mu: Vec<u64>,
    nu: Vec<u64>,
    wall: (Vec<u32>, Vec<u32>),
    order: i64,
    seed: u64,
) -> PyResult<(Vec<(i64, PyObject)>, Vec<(i64, PyObject)>)> {
    let h = input(mu, nu)?;
    let mask = |v: &[u32]| {
        v.iter()
            .fold(0u32, |acc, &i| acc | 1 << i.saturating_sub(1))
    };
    let w = Wall::new(mask(&wall.0), mask(&wall.1), h.m(), h.n()).map_err(to_py)?;
    let (lhs, rhs) = py
        .allow_threads(|| -> hurwitz_core::Result<_> {
            let spec = WallCrossingSpec::toward(&h, w)?;
            let across = sample_across(&h, spec.wall, seed)?;
            let lhs = wall_crossing_lhs(&h, spec.wall, &across, &h, order)?;
            let rhs = wall_crossing_rhs(&h, spec.wall, order)?;
            Ok((lhs, rhs))
        })
        .map_err(to_py)?;
    Ok((coefficients(py, &lhs)?, coefficients(py, &rhs)?))
}

/// Runs a verification suite; returns `(passed, report)`.
#[pyfunction]
#[pyo3(signature = (suite, seed=0))]
fn verify(py: Python<'_>, suite: &str, seed: u64) -> PyResult<(bool, String)> {
    let suite: Suite = suite.parse().map_err(to_py)?;
    let opts = VerifyOptions {
        seed,
        sign_bug: false,
    };
    let report = py.allow_threads(|| run_suite(suite, &opts));
    Ok((report.passed(), report.to_text()))
}

#[pymodule]
fn hurwitz(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("OnWallError", m.py().get_type::<OnWallError>())?;
    m.add_class::<ClosedForm>()?;
    m.add_class::<ChamberPolynomial>()?;
    m.add_function(wrap_pyfunction!(wall, m)?)?;
    m.add_function(wrap_pyfunction!(hurwitz_number, m)?)?;
    m.add_function(wrap_pyfunction!(hurwitz_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(chamber_signature, m)?)?;
    m.add_function(wrap_pyfunction!(is_totally_negative, m)?)?;
    m.add_function(wrap_pyfunction!(product_formula, m)?)?;
    m.add_function(wrap_pyfunction!(wall_crossing, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
