//! Python bindings: `import raux`.

use num_complex::Complex64;
use pyo3::exceptions::{PyOverflowError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use raux_core::calibration::Calibration;
use raux_core::coeffs::{build_d_table, coeff_document, KMAX};
use raux_core::expansion::regions::{classify_region, phi_of_r, phi_series};
use raux_core::expansion::{self, ExpansionResult};
use raux_core::zeros::{self, ZeroBox};
use raux_core::{oracle, special, Error, ScaledComplex};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Quadrature(_) | Error::NoConvergence(_) | Error::Io(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn finite(v: &ScaledComplex) -> PyResult<Complex64> {
    let z = v.to_complex();
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(PyOverflowError::new_err(format!("|R| = e^{:.6} does not fit a float; use the log form", v.log_mod)))
    }
}

/// R(s) kept as log-modulus and phase, with how it was obtained.
#[pyclass(frozen, get_all, module = "raux")]
struct Evaluation {
    log_mod: f64,
    phase: f64,
    k: usize,
    err_estimate: f64,
    method: String,
}

#[pymethods]
impl Evaluation {
    /// The value as a Python complex; raises OverflowError when out of float range.
    fn value(&self) -> PyResult<Complex64> {
        finite(&ScaledComplex::new(self.log_mod, self.phase))
    }

    fn __repr__(&self) -> String {
        format!(
            "Evaluation(log_mod={}, phase={}, k={}, err_estimate={:e}, method='{}')",
            self.log_mod, self.phase, self.k, self.err_estimate, self.method
        )
    }
}

impl From<ExpansionResult> for Evaluation {
    fn from(r: ExpansionResult) -> Self {
        let method = method_name(&r.method);
        Evaluation { log_mod: r.value.log_mod, phase: r.value.phase, k: r.k_used, err_estimate: r.err_estimate, method }
    }
}

fn method_name(m: &expansion::Method) -> String {
    match m {
        expansion::Method::Right => "right",
        expansion::Method::Left => "left",
        expansion::Method::OracleOrigin => "oracle_origin",
        expansion::Method::OracleSaddle => "oracle_saddle",
    }
    .to_string()
}

/// Evaluate R(s) with the cheapest method that reaches the target relative accuracy.
#[pyfunction]
#[pyo3(signature = (s, target = 1e-12))]
fn evaluate(s: Complex64, target: f64) -> PyResult<Evaluation> {
    expansion::eval_auto(s, target, &Calibration::default()).map(Into::into).map_err(to_py)
}

/// R(s) as a complex number.
#[pyfunction]
#[pyo3(signature = (s, target = 1e-12))]
fn r(s: Complex64, target: f64) -> PyResult<Complex64> {
    let v = expansion::eval_auto(s, target, &Calibration::default()).map_err(to_py)?;
    finite(&v.value)
}

#[pyfunction]
fn expand_right(s: Complex64, k: usize) -> PyResult<Evaluation> {
    expansion::expand_right(s, k).map(Into::into).map_err(to_py)
}

#[pyfunction]
fn expand_left(s: Complex64, k: usize) -> PyResult<Evaluation> {
    expansion::expand_left(s, k).map(Into::into).map_err(to_py)
}

/// R(s) by quadrature along the path through the origin or through the saddle.
#[pyfunction]
#[pyo3(signature = (s, path = "origin"))]
fn quadrature(s: Complex64, path: &str) -> PyResult<Complex64> {
    let v = match path {
        "origin" => oracle::r_quad_origin(s),
        "saddle" => oracle::r_quad_saddle(s),
        other => return Err(PyValueError::new_err(format!("path must be 'origin' or 'saddle', not {other:?}"))),
    }
    .map_err(to_py)?;
    finite(&v)
}

/// The kernel G(q) of the saddle term.
#[pyfunction]
fn g(q: Complex64) -> Complex64 {
    raux_core::gfunc::g_eval(q)
}

#[pyfunction]
fn chi(s: Complex64) -> PyResult<Complex64> {
    finite(&special::chi(s).map_err(to_py)?)
}

#[pyfunction]
fn zeta(s: Complex64) -> PyResult<Complex64> {
    special::zeta_em(s).map_err(to_py)
}

/// Hardy's Z(t).
#[pyfunction]
fn hardy_z(t: f64) -> PyResult<f64> {
    expansion::z_of_t(t, &Calibration::default()).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (s, theta = std::f64::consts::FRAC_PI_4))]
fn region(s: Complex64, theta: f64) -> String {
    format!("{:?}", classify_region(s, theta).tag)
}

/// Boundary angle of the zeta-sum region at radius r, exact root or its two-term series.
#[pyfunction]
#[pyo3(signature = (r, series = false))]
fn phi(r: f64, series: bool) -> PyResult<f64> {
    if series { phi_series(r) } else { phi_of_r(r) }.map_err(to_py)
}

/// Rows k = 0..=kmax of the coefficient table as fractions.Fraction.
#[pyfunction]
fn d_table(py: Python<'_>, kmax: usize) -> PyResult<Vec<Vec<Py<PyAny>>>> {
    if kmax > KMAX {
        return Err(to_py(Error::OrderOutOfRange { k: kmax, max: KMAX }));
    }
    let fraction = py.import("fractions")?.getattr("Fraction")?;
    let table = build_d_table(kmax);
    (0..=kmax).map(|k| table.row(k).iter().map(|x| Ok(fraction.call1((x.to_string(),))?.unbind())).collect()).collect()
}

/// The full coefficient document (table plus polynomials) as JSON text.
#[pyfunction]
fn coefficients_json(kmax: usize) -> PyResult<String> {
    if kmax > KMAX {
        return Err(to_py(Error::OrderOutOfRange { k: kmax, max: KMAX }));
    }
    serde_json::to_string(&coeff_document(kmax)).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

/// Zeros of R in the open box (x0, x1) × (y0, y1), counted with multiplicity.
#[pyfunction]
fn count_zeros(py: Python<'_>, x0: f64, x1: f64, y0: f64, y1: f64) -> PyResult<i64> {
    let b = ZeroBox::new(x0, x1, y0, y1);
    py.detach(|| zeros::count_zeros(&b, &Calibration::default())).map(|c| c.count).map_err(to_py)
}

/// Every zero in the open box, located to Newton accuracy, sorted by imaginary part.
#[pyfunction]
fn find_zeros(py: Python<'_>, x0: f64, x1: f64, y0: f64, y1: f64) -> PyResult<Vec<Complex64>> {
    let b = ZeroBox::new(x0, x1, y0, y1);
    let boxes = py.detach(|| zeros::census(&b, &Calibration::default())).map_err(to_py)?;
    let mut out: Vec<Complex64> = boxes.into_iter().flat_map(|b| b.zeros).collect();
    out.sort_by(|a, b| b.im.total_cmp(&a.im).then(a.re.total_cmp(&b.re)));
    Ok(out)
}

#[pyfunction]
fn refine_zero(guess: Complex64) -> PyResult<Complex64> {
    zeros::refine_zero(guess, &Calibration::default()).map_err(to_py)
}

#[pymodule]
fn raux(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Evaluation>()?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(r, m)?)?;
    m.add_function(wrap_pyfunction!(expand_right, m)?)?;
    m.add_function(wrap_pyfunction!(expand_left, m)?)?;
    m.add_function(wrap_pyfunction!(quadrature, m)?)?;
    m.add_function(wrap_pyfunction!(g, m)?)?;
    m.add_function(wrap_pyfunction!(chi, m)?)?;
    m.add_function(wrap_pyfunction!(zeta, m)?)?;
    m.add_function(wrap_pyfunction!(hardy_z, m)?)?;
    m.add_function(wrap_pyfunction!(region, m)?)?;
    m.add_function(wrap_pyfunction!(phi, m)?)?;
    m.add_function(wrap_pyfunction!(d_table, m)?)?;
    m.add_function(wrap_pyfunction!(coefficients_json, m)?)?;
    m.add_function(wrap_pyfunction!(count_zeros, m)?)?;
    m.add_function(wrap_pyfunction!(find_zeros, m)?)?;
    m.add_function(wrap_pyfunction!(refine_zero, m)?)?;
    Ok(())
}
