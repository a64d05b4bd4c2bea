//! Python bindings: the main types and operations of the br2d toolkit.
//! Scalar operations map to plain floats; suite reports come back as JSON
//! strings with the same schema the CLI emits.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use br2d::certificate::{self, Representation};
use br2d::identities;
use br2d::kernel::{self, Channel, Momentum, Momentum2D};
use br2d::quadrature::{build_radial_grid, MapKind};
use br2d::specfun;
use br2d::spectral;
use br2d::unbounded::{self, HalfNu, TrialWindow};

fn err(e: br2d::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_map(map: &str) -> PyResult<MapKind> {
    map.parse().map_err(err)
}

fn half_nu(twice_nu: i32) -> PyResult<HalfNu> {
    match twice_nu {
        -1 => Ok(HalfNu::MinusHalf),
        1 => Ok(HalfNu::PlusHalf),
        _ => Err(PyValueError::new_err("twice_nu must be -1 or +1")),
    }
}

/// (delta_c, 1 - 2 delta_c)
#[pyfunction]
fn critical_coupling() -> (f64, f64) {
    let cc = certificate::critical_coupling();
    (cc.delta_c, cc.floor())
}

#[pyfunction]
fn gamma(x: f64) -> PyResult<f64> {
    specfun::gamma(x).map_err(err)
}

#[pyfunction]
fn digamma(x: f64) -> PyResult<f64> {
    specfun::digamma(x).map_err(err)
}

#[pyfunction]
fn hyp2f1(a: f64, b: f64, c: f64, x: f64) -> PyResult<f64> {
    specfun::hyp2f1(specfun::Hyp2F1Params::new(a, b, c, x).map_err(err)?).map_err(err)
}

/// Associated Legendre P^mu_nu(x) for mu in {0, -1}, nu = twice_nu/2.
#[pyfunction]
fn legendre_p(mu: i32, twice_nu: i64, x: f64) -> PyResult<f64> {
    specfun::legendre_p(mu, specfun::HalfIntegerDegree::new(twice_nu), x).map_err(err)
}

/// Legendre Q of degree k - 1/2 at t > 1.
#[pyfunction]
fn legendre_q_half(k: u32, t: f64) -> PyResult<f64> {
    specfun::legendre_q_half(k, t).map_err(err)
}

#[pyfunction]
fn bessel_j(k: u32, x: f64) -> PyResult<f64> {
    specfun::bessel_j(k, x).map_err(err)
}

#[pyfunction]
fn ellipk(m: f64) -> f64 {
    specfun::ellipk(m)
}

#[pyfunction]
fn ellipe(m: f64) -> f64 {
    specfun::ellipe(m)
}

/// Relativistic energy e(p) = sqrt(p^2 + 1).
#[pyfunction]
fn energy(p: f64) -> PyResult<f64> {
    Ok(kernel::energy(Momentum::new(p).map_err(err)?))
}

#[pyfunction]
fn beta_weights(p: f64, q: f64) -> PyResult<(f64, f64)> {
    Ok(kernel::beta_weights(
        Momentum::new(p).map_err(err)?,
        Momentum::new(q).map_err(err)?,
    ))
}

/// Channel kernel K_k(p, q), p != q.
#[pyfunction]
fn channel_kernel(k: i32, p: f64, q: f64) -> PyResult<f64> {
    kernel::channel_kernel(
        Channel::new(k),
        Momentum::new(p).map_err(err)?,
        Momentum::new(q).map_err(err)?,
    )
    .map_err(err)
}

/// Full 2D kernel K(p, q) as (re, im).
#[pyfunction]
fn full_kernel(p1: f64, p2: f64, q1: f64, q2: f64) -> PyResult<(f64, f64)> {
    let v = kernel::full_kernel(
        Momentum2D::new(p1, p2).map_err(err)?,
        Momentum2D::new(q1, q2).map_err(err)?,
    )
    .map_err(err)?;
    Ok((v.re, v.im))
}

/// Pointwise energy bound E(p) at the given coupling.
#[pyfunction]
fn energy_bound(p: f64, delta: f64) -> PyResult<f64> {
    certificate::energy_bound(p, delta).map_err(err)
}

/// f(x) on (0, 1]; representation is "hypergeometric" or "legendre".
#[pyfunction]
#[pyo3(signature = (x, representation = "hypergeometric"))]
fn f_of_x(x: f64, representation: &str) -> PyResult<f64> {
    let repr = match representation {
        "hypergeometric" => Representation::Hypergeometric,
        "legendre" => Representation::Legendre,
        other => return Err(PyValueError::new_err(format!("unknown representation '{other}'"))),
    };
    certificate::f_of_x(x, repr).map_err(err)
}

#[pyfunction]
fn trial_h(k: u32, p: f64) -> PyResult<f64> {
    certificate::trial_h(k, p).map_err(err)
}

#[pyfunction]
fn i_k_closed(k: u32, p: f64) -> PyResult<f64> {
    certificate::i_k_closed(k, p).map_err(err)
}

#[pyfunction]
fn i_k_quadrature(k: u32, p: f64, tol: f64) -> PyResult<f64> {
    certificate::i_k_quadrature(k, p, tol).map_err(err)
}

/// I_nu for twice_nu in {-1, +1}, by quadrature.
#[pyfunction]
fn i_nu_constant(twice_nu: i32) -> PyResult<f64> {
    unbounded::i_nu_constant(half_nu(twice_nu)?).map_err(err)
}

/// <f, b_0 f> for f = chi_(a,b)/p as a dict-like tuple
/// (a, b, delta, form_value, norm_sq, log_ratio).
#[pyfunction]
fn trial_form_value(a: f64, b: f64, delta: f64) -> PyResult<(f64, f64, f64, f64, f64, f64)> {
    let w = TrialWindow::new(a, b).map_err(err)?;
    let row = unbounded::trial_form_value(w, delta, 1e-7).map_err(err)?;
    Ok((row.a, row.b, row.delta, row.form_value, row.norm_sq, row.log_ratio))
}

/// Lowest eigenvalues of the channel form: one (delta, lambda_min, residual)
/// triple per coupling.
#[pyfunction]
#[pyo3(signature = (deltas, k = 0, n = 200, p_max = 1e4, map = "rational"))]
fn spectrum(
    deltas: Vec<f64>,
    k: i32,
    n: usize,
    p_max: f64,
    map: &str,
) -> PyResult<Vec<(f64, f64, f64)>> {
    let grid = build_radial_grid(n, parse_map(map)?, p_max).map_err(err)?;
    let reports = spectral::delta_sweep(&grid, Channel::new(k), &deltas).map_err(err)?;
    Ok(reports
        .iter()
        .map(|r| (r.delta, r.lambda_min, r.residual))
        .collect())
}

/// The certificate suite as a JSON string (same schema as the CLI).
#[pyfunction]
fn certificate_suite_json() -> PyResult<String> {
    let reps = certificate::certificate_suite().map_err(err)?;
    Ok(serde_json::to_string(&reps).expect("serializable reports"))
}

/// The identity suite as a JSON string (same schema as the CLI).
#[pyfunction]
fn identity_suite_json() -> PyResult<String> {
    let reps = identities::identity_suite().map_err(err)?;
    Ok(serde_json::to_string(&reps).expect("serializable reports"))
}

/// Quadrature grid on the truncated half-line.
#[pyclass(name = "RadialGrid")]
struct PyRadialGrid {
    inner: br2d::RadialGrid,
}

#[pymethods]
impl PyRadialGrid {
    #[new]
    #[pyo3(signature = (n, p_max = 1e4, map = "rational"))]
    fn new(n: usize, p_max: f64, map: &str) -> PyResult<Self> {
        Ok(Self { inner: build_radial_grid(n, parse_map(map)?, p_max).map_err(err)? })
    }
    fn nodes(&self) -> Vec<f64> {
        self.inner.nodes().to_vec()
    }
    fn weights(&self) -> Vec<f64> {
        self.inner.weights().to_vec()
    }
    fn p_max(&self) -> f64 {
        self.inner.p_max()
    }
    fn self_test_error(&self) -> f64 {
        self.inner.self_test_error()
    }
    fn __len__(&self) -> usize {
        self.inner.len()
    }
}

#[pymodule]
fn br2d_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRadialGrid>()?;
    m.add_function(wrap_pyfunction!(critical_coupling, m)?)?;
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(digamma, m)?)?;
    m.add_function(wrap_pyfunction!(hyp2f1, m)?)?;
    m.add_function(wrap_pyfunction!(legendre_p, m)?)?;
    m.add_function(wrap_pyfunction!(legendre_q_half, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_j, m)?)?;
    m.add_function(wrap_pyfunction!(ellipk, m)?)?;
    m.add_function(wrap_pyfunction!(ellipe, m)?)?;
    m.add_function(wrap_pyfunction!(energy, m)?)?;
    m.add_function(wrap_pyfunction!(beta_weights, m)?)?;
    m.add_function(wrap_pyfunction!(channel_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(full_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(energy_bound, m)?)?;
    m.add_function(wrap_pyfunction!(f_of_x, m)?)?;
    m.add_function(wrap_pyfunction!(trial_h, m)?)?;
    m.add_function(wrap_pyfunction!(i_k_closed, m)?)?;
    m.add_function(wrap_pyfunction!(i_k_quadrature, m)?)?;
    m.add_function(wrap_pyfunction!(i_nu_constant, m)?)?;
    m.add_function(wrap_pyfunction!(trial_form_value, m)?)?;
    m.add_function(wrap_pyfunction!(spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(certificate_suite_json, m)?)?;
    m.add_function(wrap_pyfunction!(identity_suite_json, m)?)?;
    Ok(())
}
