//! Python bindings for `frontpair`.
//!
//! Build with `cargo build -p frontpair-python --release --features extension-module`
//! and import the resulting shared library as `frontpair_py`.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use frontpair::cli_io;
use frontpair::spectrum::uniform_grid as grid_impl;
use frontpair::Error;

create_exception!(frontpair_py, FrontpairError, PyException);
create_exception!(frontpair_py, ResonantDivergenceError, FrontpairError);
create_exception!(frontpair_py, DegenerateError, FrontpairError);
create_exception!(frontpair_py, RootBracketingError, FrontpairError);
create_exception!(frontpair_py, ConfigError, FrontpairError);

fn to_py(err: Error) -> PyErr {
    let msg = err.to_string();
    match err {
        Error::ResonantDivergence { .. } => ResonantDivergenceError::new_err(msg),
        Error::DegenerateFrame { .. } | Error::DegenerateGeometry(_) => DegenerateError::new_err(msg),
        Error::RootBracketingFailure { .. } => RootBracketingError::new_err(msg),
        Error::Config(_) => ConfigError::new_err(msg),
        Error::InvalidInput(_) => PyValueError::new_err(msg),
        Error::Io(_) => FrontpairError::new_err(msg),
    }
}

trait IntoPyResult<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> IntoPyResult<T> for frontpair::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(to_py)
    }
}

#[pyclass(name = "BoundaryConfig", frozen, from_py_object)]
#[derive(Clone)]
struct PyBoundaryConfig(frontpair::BoundaryConfig);

#[pymethods]
impl PyBoundaryConfig {
    #[new]
    fn new(beta: f64, n_i: f64, n_t: f64, n_r: f64, n_a: f64) -> PyResult<Self> {
        frontpair::BoundaryConfig::new(beta, n_i, n_t, n_r, n_a).py().map(Self)
    }

    #[staticmethod]
    fn from_u_over_c(u_over_c: f64, n_i: f64, n_t: f64, n_r: f64, n_a: f64) -> PyResult<Self> {
        frontpair::BoundaryConfig::from_u_over_c(u_over_c, n_i, n_t, n_r, n_a).py().map(Self)
    }

    #[getter]
    fn beta(&self) -> f64 {
        self.0.beta()
    }
    #[getter]
    fn gamma(&self) -> f64 {
        self.0.gamma()
    }
    #[getter]
    fn n_i(&self) -> f64 {
        self.0.n_i()
    }
    #[getter]
    fn n_t(&self) -> f64 {
        self.0.n_t()
    }
    #[getter]
    fn n_r(&self) -> f64 {
        self.0.n_r()
    }
    #[getter]
    fn n_a(&self) -> f64 {
        self.0.n_a()
    }

    fn __repr__(&self) -> String {
        format!(
            "BoundaryConfig(beta={}, n_i={}, n_t={}, n_r={}, n_a={})",
            self.0.beta(),
            self.0.n_i(),
            self.0.n_t(),
            self.0.n_r(),
            self.0.n_a()
        )
    }
}

#[pyclass(name = "ThermalContext", frozen, from_py_object)]
#[derive(Clone)]
struct PyThermalContext(frontpair::ThermalContext);

#[pymethods]
impl PyThermalContext {
    #[new]
    #[pyo3(signature = (n_bar = 0.0))]
    fn new(n_bar: f64) -> PyResult<Self> {
        frontpair::ThermalContext::new(n_bar).py().map(Self)
    }

    #[getter]
    fn n_bar(&self) -> f64 {
        self.0.n_bar()
    }
}

#[pyclass(name = "WaveMode", frozen, from_py_object)]
#[derive(Clone)]
struct PyWaveMode(frontpair::WaveMode);

#[pymethods]
impl PyWaveMode {
    #[staticmethod]
    fn incident(k: f64, theta: f64, n: f64) -> PyResult<Self> {
        frontpair::WaveMode::incident(k, theta, n).py().map(Self)
    }

    #[getter]
    fn k_par(&self) -> f64 {
        self.0.k_par
    }
    #[getter]
    fn k_perp(&self) -> f64 {
        self.0.k_perp
    }
    #[getter]
    fn magnitude(&self) -> f64 {
        self.0.magnitude
    }
    #[getter]
    fn theta(&self) -> f64 {
        self.0.theta
    }
    #[getter]
    fn branch(&self) -> &'static str {
        self.0.branch.as_str()
    }
    #[getter]
    fn n(&self) -> f64 {
        self.0.n
    }
    #[getter]
    fn omega(&self) -> f64 {
        self.0.omega
    }

    fn __repr__(&self) -> String {
        format!(
            "WaveMode(branch={}, k_par={}, k_perp={}, theta={})",
            self.0.branch, self.0.k_par, self.0.k_perp, self.0.theta
        )
    }
}

#[pyclass(name = "ScatteringCoefficients", frozen, get_all)]
struct PyScatteringCoefficients {
    alpha: f64,
    a_coef: f64,
    b_coef: f64,
    z: f64,
    g_func_i: f64,
    g_func_t: f64,
}

#[pyclass(name = "EmissionPoint", frozen, get_all)]
struct PyEmissionPoint {
    theta_i: f64,
    theta_t: f64,
    theta_r: f64,
    mean_pairs: f64,
    e_vn: f64,
    e_n: f64,
    status: &'static str,
}

#[pyfunction]
fn boosted_index(n: f64, theta: f64, beta: f64) -> PyResult<f64> {
    frontpair::boosted_index(n, theta, beta).py()
}

#[pyfunction]
fn kinematic_aux<'py>(py: Python<'py>, theta_i: f64, cfg: &PyBoundaryConfig) -> PyResult<Bound<'py, PyDict>> {
    let a = frontpair::kinematic_aux(theta_i, &cfg.0).py()?;
    let d = PyDict::new(py);
    for (k, v) in [
        ("f", a.f),
        ("h_i", a.h_i),
        ("h_t", a.h_t),
        ("h_r", a.h_r),
        ("delta_it", a.delta_it),
        ("delta_ir", a.delta_ir),
        ("g_i", a.g_i),
        ("g_t", a.g_t),
        ("g_r", a.g_r),
    ] {
        d.set_item(k, v)?;
    }
    Ok(d)
}

#[pyfunction]
fn scatter(incident: &PyWaveMode, cfg: &PyBoundaryConfig) -> PyResult<(PyWaveMode, PyWaveMode, PyWaveMode)> {
    let (t, r, a) = frontpair::scatter(&incident.0, &cfg.0).py()?;
    Ok((PyWaveMode(t), PyWaveMode(r), PyWaveMode(a)))
}

#[pyfunction]
fn transmitted_angle(theta_i: f64, cfg: &PyBoundaryConfig) -> PyResult<f64> {
    frontpair::transmitted_angle(theta_i, &cfg.0).py()
}

#[pyfunction]
fn reflected_angle(theta_i: f64, cfg: &PyBoundaryConfig) -> PyResult<f64> {
    frontpair::reflected_angle(theta_i, &cfg.0).py()
}

#[pyfunction]
fn bogoliubov_coefficients(theta_i: f64, cfg: &PyBoundaryConfig) -> PyResult<PyScatteringCoefficients> {
    let c = frontpair::bogoliubov_coefficients(theta_i, &cfg.0).py()?;
    Ok(PyScatteringCoefficients {
        alpha: c.alpha,
        a_coef: c.a_coef,
        b_coef: c.b_coef,
        z: c.z,
        g_func_i: c.g_func_i,
        g_func_t: c.g_func_t,
    })
}

#[pyfunction]
fn mean_pair_number(z: f64) -> PyResult<f64> {
    frontpair::mean_pair_number(z).py()
}

#[pyfunction]
fn mean_pair_number_closed_form(theta_i: f64, cfg: &PyBoundaryConfig) -> PyResult<f64> {
    frontpair::mean_pair_number_closed_form(theta_i, &cfg.0).py()
}

/// Returns `(probabilities, truncation_mass)`.
#[pyfunction]
fn pair_distribution(z: f64, n_max: usize) -> PyResult<(Vec<f64>, f64)> {
    let d = frontpair::pair_distribution(z, n_max).py()?;
    Ok((d.probabilities, d.truncation_mass))
}

#[pyfunction]
fn sample_pair_counts(z: f64, seed: u64, count: usize) -> PyResult<Vec<u64>> {
    frontpair::sample_pair_counts(z, seed, count).py()
}

#[pyfunction]
fn entanglement_entropy(mean_pairs: f64) -> PyResult<f64> {
    frontpair::entanglement_entropy(mean_pairs).py()
}

#[pyfunction]
fn symplectic_eigenvalue(ctx: &PyThermalContext, z: f64) -> PyResult<f64> {
    frontpair::symplectic_eigenvalue(&ctx.0, z).py()
}

#[pyfunction]
fn log_negativity(ctx: &PyThermalContext, z: f64) -> PyResult<f64> {
    frontpair::log_negativity(&ctx.0, z).py()
}

#[pyfunction]
fn critical_occupancy(z: f64) -> PyResult<f64> {
    frontpair::critical_occupancy(z).py()
}

fn report_dict<'py>(py: Python<'py>, r: &frontpair::RegimeReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("regime", r.regime.as_str())?;
    d.set_item("incident_branch_active", r.incident_branch_active)?;
    d.set_item("reflected_branch_active", r.reflected_branch_active)?;
    let roots = PyList::empty(py);
    for x in &r.resonances {
        let e = PyDict::new(py);
        e.set_item("branch", x.branch.as_str())?;
        e.set_item("theta_i", x.theta_i)?;
        e.set_item("theta_t", x.theta_t)?;
        e.set_item("theta_r", x.theta_r)?;
        roots.append(e)?;
    }
    d.set_item("resonances", roots)?;
    Ok(d)
}

#[pyfunction]
fn classify_regime<'py>(py: Python<'py>, cfg: &PyBoundaryConfig) -> PyResult<Bound<'py, PyDict>> {
    report_dict(py, &frontpair::classify_regime(&cfg.0))
}

#[pyfunction]
#[pyo3(signature = (cfg, tol = 1e-13))]
fn resonance_angles<'py>(py: Python<'py>, cfg: &PyBoundaryConfig, tol: f64) -> PyResult<Bound<'py, PyDict>> {
    let report = frontpair::resonance_angles(&cfg.0, tol).py()?;
    report_dict(py, &report)
}

#[pyfunction]
#[pyo3(signature = (points, theta_min = 0.0, theta_max = std::f64::consts::PI, include_endpoints = false))]
fn uniform_grid(points: usize, theta_min: f64, theta_max: f64, include_endpoints: bool) -> PyResult<Vec<f64>> {
    grid_impl(points, theta_min, theta_max, include_endpoints).py()
}

#[pyfunction]
#[pyo3(signature = (cfg, grid, ctx = None, divergence_cap = cli_io::DEFAULT_DIVERGENCE_CAP))]
fn angular_spectrum(
    py: Python<'_>,
    cfg: &PyBoundaryConfig,
    grid: Vec<f64>,
    ctx: Option<&PyThermalContext>,
    divergence_cap: f64,
) -> PyResult<Vec<PyEmissionPoint>> {
    let ctx = ctx.map(|c| c.0).unwrap_or_default();
    let cfg = cfg.0;
    let points = py
        .detach(|| frontpair::angular_spectrum(&cfg, &grid, &ctx, divergence_cap))
        .py()?;
    Ok(points
        .into_iter()
        .map(|p| PyEmissionPoint {
            theta_i: p.theta_i,
            theta_t: p.theta_t,
            theta_r: p.theta_r,
            mean_pairs: p.mean_pairs,
            e_vn: p.e_vn,
            e_n: p.e_n,
            status: p.status.as_str(),
        })
        .collect())
}

/// Run the `spectrum` subcommand on a configuration document and return
/// the serialized table.
#[pyfunction]
fn run_spectrum(config: &str) -> PyResult<String> {
    let cfg = cli_io::parse_config(config).map_err(|e| to_py(e.into()))?;
    cli_io::run_spectrum(&cfg).py()
}

#[pyfunction]
fn run_resonances(config: &str) -> PyResult<String> {
    let cfg = cli_io::parse_config(config).map_err(|e| to_py(e.into()))?;
    cli_io::run_resonances(&cfg).py()
}

#[pymodule]
fn frontpair_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("FrontpairError", py.get_type::<FrontpairError>())?;
    m.add("ResonantDivergenceError", py.get_type::<ResonantDivergenceError>())?;
    m.add("DegenerateError", py.get_type::<DegenerateError>())?;
    m.add("RootBracketingError", py.get_type::<RootBracketingError>())?;
    m.add("ConfigError", py.get_type::<ConfigError>())?;

    m.add_class::<PyBoundaryConfig>()?;
    m.add_class::<PyThermalContext>()?;
    m.add_class::<PyWaveMode>()?;
    m.add_class::<PyScatteringCoefficients>()?;
    m.add_class::<PyEmissionPoint>()?;

    m.add_function(wrap_pyfunction!(boosted_index, m)?)?;
    m.add_function(wrap_pyfunction!(kinematic_aux, m)?)?;
    m.add_function(wrap_pyfunction!(scatter, m)?)?;
    m.add_function(wrap_pyfunction!(transmitted_angle, m)?)?;
    m.add_function(wrap_pyfunction!(reflected_angle, m)?)?;
    m.add_function(wrap_pyfunction!(bogoliubov_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(mean_pair_number, m)?)?;
    m.add_function(wrap_pyfunction!(mean_pair_number_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(pair_distribution, m)?)?;
    m.add_function(wrap_pyfunction!(sample_pair_counts, m)?)?;
    m.add_function(wrap_pyfunction!(entanglement_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(symplectic_eigenvalue, m)?)?;
    m.add_function(wrap_pyfunction!(log_negativity, m)?)?;
    m.add_function(wrap_pyfunction!(critical_occupancy, m)?)?;
    m.add_function(wrap_pyfunction!(classify_regime, m)?)?;
    m.add_function(wrap_pyfunction!(resonance_angles, m)?)?;
    m.add_function(wrap_pyfunction!(uniform_grid, m)?)?;
    m.add_function(wrap_pyfunction!(angular_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(run_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(run_resonances, m)?)?;
    Ok(())
}
