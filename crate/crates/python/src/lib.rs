//! Python bindings. The module is importable as `johnson_casimir`.

use johnson_casimir::circuit::{self, AntennaPair, InteractionSolver, ReducedParams, ResistanceLaw};
use johnson_casimir::geometry::{self, WireGeometry};
use johnson_casimir::langevin::{self, Integrator, SimulationConfig};
use johnson_casimir::lifshitz::{self, DielectricModel, LifshitzConfig};
use johnson_casimir::quadrature::QuadratureSpec;
use johnson_casimir::{constants, Error};
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

create_exception!(johnson_casimir, ConvergenceError, PyRuntimeError);

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Quadrature(_) => ConvergenceError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn solver(rel_tol: Option<f64>, abs_tol: Option<f64>) -> InteractionSolver {
    let base = QuadratureSpec::default();
    InteractionSolver::new(QuadratureSpec::with_tolerances(
        rel_tol.unwrap_or(base.rel_tol),
        abs_tol.unwrap_or(base.abs_tol),
    ))
}

/// Integral value with its error estimate.
#[pyclass(frozen, get_all, module = "johnson_casimir")]
struct Estimate {
    value: f64,
    error_estimate: f64,
    converged: bool,
}

#[pymethods]
impl Estimate {
    fn __repr__(&self) -> String {
        format!(
            "Estimate(value={:e}, error_estimate={:e}, converged={})",
            self.value, self.error_estimate, self.converged
        )
    }
}

impl From<johnson_casimir::quadrature::QuadratureResult> for Estimate {
    fn from(r: johnson_casimir::quadrature::QuadratureResult) -> Self {
        Self {
            value: r.value,
            error_estimate: r.error_estimate,
            converged: r.converged,
        }
    }
}

#[pyclass(frozen, get_all, module = "johnson_casimir")]
struct ThermoPoint {
    temperature: f64,
    free_energy: f64,
    entropy: f64,
    force_coefficient: f64,
    total_entropy: Option<f64>,
    quadrature_error: f64,
    converged: bool,
}

#[pymethods]
impl ThermoPoint {
    fn __repr__(&self) -> String {
        format!(
            "ThermoPoint(temperature={:e}, free_energy={:e}, entropy={:e}, force_coefficient={:e})",
            self.temperature, self.free_energy, self.entropy, self.force_coefficient
        )
    }
}

impl From<circuit::ThermoPoint> for ThermoPoint {
    fn from(p: circuit::ThermoPoint) -> Self {
        Self {
            temperature: p.temperature,
            free_energy: p.free_energy,
            entropy: p.entropy,
            force_coefficient: p.force_coefficient,
            total_entropy: p.total_entropy,
            quadrature_error: p.quadrature_error,
            converged: p.converged,
        }
    }
}

/// Force factor `H(rho, m^2, kappa)` in units of `k_B T`.
#[pyfunction]
#[pyo3(signature = (rho, m_sq, kappa = 0.0, rel_tol = None, abs_tol = None))]
fn h_factor(rho: f64, m_sq: f64, kappa: f64, rel_tol: Option<f64>, abs_tol: Option<f64>) -> PyResult<Estimate> {
    let p = ReducedParams::new(rho, m_sq, kappa).map_err(py_err)?;
    Ok(solver(rel_tol, abs_tol).h_factor(&p).map_err(py_err)?.into())
}

/// Interaction free energy in units of `k_B T`.
#[pyfunction]
#[pyo3(signature = (rho, m_sq, kappa = 0.0, rel_tol = None, abs_tol = None))]
fn reduced_free_energy(rho: f64, m_sq: f64, kappa: f64, rel_tol: Option<f64>, abs_tol: Option<f64>) -> PyResult<Estimate> {
    let p = ReducedParams::new(rho, m_sq, kappa).map_err(py_err)?;
    Ok(solver(rel_tol, abs_tol).reduced_free_energy(&p).map_err(py_err)?.into())
}

/// Interaction entropy in units of `k_B`; `log_slope` is `T R'(T) / R`.
#[pyfunction]
#[pyo3(signature = (rho, m_sq, kappa = 0.0, log_slope = 0.0, rel_tol = None, abs_tol = None))]
fn reduced_entropy(
    rho: f64,
    m_sq: f64,
    kappa: f64,
    log_slope: f64,
    rel_tol: Option<f64>,
    abs_tol: Option<f64>,
) -> PyResult<Estimate> {
    let p = ReducedParams::new(rho, m_sq, kappa).map_err(py_err)?;
    Ok(solver(rel_tol, abs_tol).reduced_entropy(&p, log_slope).map_err(py_err)?.into())
}

/// Two identical antennas in SI units. With `t_ref` the resistance follows
/// `resistance * (T / t_ref)^exponent`, otherwise it is constant.
#[pyclass(frozen, module = "johnson_casimir")]
struct Antennas {
    pair: AntennaPair,
}

#[pymethods]
impl Antennas {
    #[new]
    #[pyo3(signature = (inductance, coupling, resistance, capacitance = None, t_ref = None, exponent = 2.0))]
    fn new(
        inductance: f64,
        coupling: f64,
        resistance: f64,
        capacitance: Option<f64>,
        t_ref: Option<f64>,
        exponent: f64,
    ) -> PyResult<Self> {
        let law = match t_ref {
            Some(t_ref) => ResistanceLaw::PowerLaw {
                r_ref: resistance,
                t_ref,
                exponent,
            },
            None => ResistanceLaw::Constant(resistance),
        };
        let pair = AntennaPair::new(inductance, coupling, law, capacitance).map_err(py_err)?;
        Ok(Self { pair })
    }

    fn resistance(&self, temperature: f64) -> f64 {
        self.pair.resistance.resistance(temperature)
    }

    /// Free energy (J), entropies (J/K) and force coefficient (J) at `temperature` kelvin.
    #[pyo3(signature = (temperature, rel_tol = None, abs_tol = None))]
    fn thermo_point(&self, temperature: f64, rel_tol: Option<f64>, abs_tol: Option<f64>) -> PyResult<ThermoPoint> {
        Ok(solver(rel_tol, abs_tol)
            .thermo_point(&self.pair, temperature)
            .map_err(py_err)?
            .into())
    }
}

/// Reduced curves for `m = 0.8`, `omega_R = 5 t^2 omega_C`.
#[pyfunction]
fn figure1_curve(t_grid: Vec<f64>) -> PyResult<Vec<ThermoPoint>> {
    Ok(circuit::figure1_curve(&t_grid)
        .map_err(py_err)?
        .into_iter()
        .map(Into::into)
        .collect())
}

/// Low-temperature RLC free energy asymptote in units of `hbar omega_C`.
#[pyfunction]
fn low_temperature_asymptote(m: f64, omega_r_over_omega_c: f64, t: f64) -> f64 {
    circuit::low_temperature_asymptote_reduced(m, omega_r_over_omega_c, t)
}

#[pyclass(frozen, get_all, module = "johnson_casimir")]
struct WireInductances {
    self_inductance: f64,
    mutual_inductance: f64,
    neumann_mutual_inductance: f64,
    coupling: f64,
    coupling_sq_gradient: f64,
    thin_wire_valid: bool,
}

/// Inductances of two parallel wires, closed form and by the Neumann double integral.
#[pyfunction]
fn wire_inductances(length: f64, wire_radius: f64, separation: f64) -> PyResult<WireInductances> {
    let g = WireGeometry::new(length, wire_radius, separation).map_err(py_err)?;
    let profile = geometry::coupling_profile(&g).map_err(py_err)?;
    let spec = QuadratureSpec::with_tolerances(1e-12, 0.0);
    Ok(WireInductances {
        self_inductance: geometry::self_inductance(&g).map_err(py_err)?,
        mutual_inductance: geometry::mutual_inductance(&g).map_err(py_err)?,
        neumann_mutual_inductance: geometry::neumann_mutual_inductance(&g, &spec).map_err(py_err)?,
        coupling: profile.coupling,
        coupling_sq_gradient: profile.coupling_sq_gradient,
        thin_wire_valid: g.thin_wire_valid(),
    })
}

#[pyclass(frozen, get_all, module = "johnson_casimir")]
struct Covariance {
    var_i1: f64,
    var_i2: f64,
    cov_i12: f64,
    standard_error: f64,
    samples: usize,
}

impl From<langevin::CovarianceEstimate> for Covariance {
    fn from(c: langevin::CovarianceEstimate) -> Self {
        Self {
            var_i1: c.var_i1,
            var_i2: c.var_i2,
            cov_i12: c.cov_i12,
            standard_error: c.standard_error,
            samples: c.samples,
        }
    }
}

/// Stochastic simulation of the coupled RL circuits; `time_step` is in units of `L / R`.
#[pyfunction]
#[pyo3(signature = (inductance, mutual, resistance, thermal_energy, seed, time_step = 0.05, steps = 250_000, burn_in = 2_000, ensemble = 40, integrator = "exact"))]
#[allow(clippy::too_many_arguments)]
fn simulate_coupled_rl(
    py: Python<'_>,
    inductance: f64,
    mutual: f64,
    resistance: f64,
    thermal_energy: f64,
    seed: u64,
    time_step: f64,
    steps: usize,
    burn_in: usize,
    ensemble: usize,
    integrator: &str,
) -> PyResult<Covariance> {
    let integrator = match integrator {
        "exact" => Integrator::Exact,
        "euler_maruyama" => Integrator::EulerMaruyama,
        other => return Err(PyValueError::new_err(format!("unknown integrator `{other}`"))),
    };
    let cfg = SimulationConfig {
        time_step,
        steps,
        burn_in,
        ensemble,
        seed,
        integrator,
    };
    let c = py
        .detach(|| langevin::simulate_coupled_rl(inductance, mutual, resistance, thermal_energy, &cfg))
        .map_err(py_err)?;
    Ok(c.into())
}

/// Classical equilibrium current covariance.
#[pyfunction]
fn equipartition_covariance(inductance: f64, mutual: f64, thermal_energy: f64) -> PyResult<Covariance> {
    Ok(langevin::equipartition_covariance(inductance, mutual, thermal_energy)
        .map_err(py_err)?
        .into())
}

#[pyclass(frozen, module = "johnson_casimir")]
struct Dielectric {
    model: DielectricModel,
}

#[pymethods]
impl Dielectric {
    #[staticmethod]
    fn ideal() -> Self {
        Self {
            model: DielectricModel::Ideal,
        }
    }

    /// Plasma model; gold by default.
    #[staticmethod]
    #[pyo3(signature = (plasma_frequency = lifshitz::GOLD_PLASMA_FREQUENCY))]
    fn plasma(plasma_frequency: f64) -> PyResult<Self> {
        let model = DielectricModel::Plasma { plasma_frequency };
        model.validate().map_err(py_err)?;
        Ok(Self { model })
    }

    /// Drude model; gold by default.
    #[staticmethod]
    #[pyo3(signature = (plasma_frequency = lifshitz::GOLD_PLASMA_FREQUENCY, relaxation = lifshitz::GOLD_RELAXATION))]
    fn drude(plasma_frequency: f64, relaxation: f64) -> PyResult<Self> {
        let model = DielectricModel::Drude {
            plasma_frequency,
            relaxation,
        };
        model.validate().map_err(py_err)?;
        Ok(Self { model })
    }

    #[getter]
    fn name(&self) -> &'static str {
        self.model.name()
    }

    /// `eps(i xi)` for `xi > 0` in rad/s.
    fn permittivity(&self, xi: f64) -> PyResult<f64> {
        self.model.permittivity_imag_freq(xi).map_err(py_err)
    }

    /// `(r_TE, r_TM)` at imaginary frequency `xi` and in-plane wavenumber `k`.
    fn reflection(&self, xi: f64, k: f64) -> PyResult<(f64, f64)> {
        let r = lifshitz::reflection_coefficients(&self.model, xi, k).map_err(py_err)?;
        Ok((r.te, r.tm))
    }

    fn __repr__(&self) -> String {
        format!("Dielectric({:?})", self.model)
    }
}

#[pyclass(frozen, get_all, module = "johnson_casimir")]
struct LifshitzResult {
    value: f64,
    truncation_bound: f64,
    quadrature_error: f64,
    terms: usize,
    converged: bool,
}

impl From<lifshitz::LifshitzResult> for LifshitzResult {
    fn from(r: lifshitz::LifshitzResult) -> Self {
        Self {
            value: r.value,
            truncation_bound: r.truncation_bound,
            quadrature_error: r.quadrature_error,
            terms: r.terms,
            converged: r.converged,
        }
    }
}

#[pymethods]
impl LifshitzResult {
    fn __repr__(&self) -> String {
        format!(
            "LifshitzResult(value={:e}, truncation_bound={:e}, terms={}, converged={})",
            self.value, self.truncation_bound, self.terms, self.converged
        )
    }
}

fn lifshitz_config(separation: f64, temperature: f64, model: &Dielectric) -> PyResult<LifshitzConfig> {
    let cfg = LifshitzConfig::new(separation, temperature, model.model);
    cfg.validate().map_err(py_err)?;
    Ok(cfg)
}

/// Casimir pressure between two plates in Pa (negative is attractive).
#[pyfunction]
fn casimir_pressure(py: Python<'_>, separation: f64, temperature: f64, model: &Dielectric) -> PyResult<LifshitzResult> {
    let cfg = lifshitz_config(separation, temperature, model)?;
    Ok(py.detach(|| lifshitz::pressure(&cfg)).map_err(py_err)?.into())
}

/// Casimir free energy per unit area in J/m^2.
#[pyfunction]
fn casimir_free_energy(py: Python<'_>, separation: f64, temperature: f64, model: &Dielectric) -> PyResult<LifshitzResult> {
    let cfg = lifshitz_config(separation, temperature, model)?;
    Ok(py.detach(|| lifshitz::free_energy_per_area(&cfg)).map_err(py_err)?.into())
}

#[pyfunction]
fn matsubara_frequency(n: usize, temperature: f64) -> f64 {
    lifshitz::matsubara_frequency(n, temperature)
}

#[pymodule]
#[pyo3(name = "johnson_casimir")]
fn py_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("BOLTZMANN", constants::BOLTZMANN)?;
    m.add("HBAR", constants::HBAR)?;
    m.add("SPEED_OF_LIGHT", constants::SPEED_OF_LIGHT)?;
    m.add("MU_0", constants::MU_0)?;
    m.add("ZETA_3", constants::ZETA_3)?;
    m.add("GOLD_PLASMA_FREQUENCY", lifshitz::GOLD_PLASMA_FREQUENCY)?;
    m.add("GOLD_RELAXATION", lifshitz::GOLD_RELAXATION)?;
    m.add("GENERATOR_ID", langevin::GENERATOR_ID)?;
    m.add("ConvergenceError", m.py().get_type::<ConvergenceError>())?;
    m.add_class::<Estimate>()?;
    m.add_class::<ThermoPoint>()?;
    m.add_class::<Antennas>()?;
    m.add_class::<WireInductances>()?;
    m.add_class::<Covariance>()?;
    m.add_class::<Dielectric>()?;
    m.add_class::<LifshitzResult>()?;
    m.add_function(wrap_pyfunction!(h_factor, m)?)?;
    m.add_function(wrap_pyfunction!(reduced_free_energy, m)?)?;
    m.add_function(wrap_pyfunction!(reduced_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(figure1_curve, m)?)?;
    m.add_function(wrap_pyfunction!(low_temperature_asymptote, m)?)?;
    m.add_function(wrap_pyfunction!(wire_inductances, m)?)?;
    m.add_function(wrap_pyfunction!(simulate_coupled_rl, m)?)?;
    m.add_function(wrap_pyfunction!(equipartition_covariance, m)?)?;
    m.add_function(wrap_pyfunction!(casimir_pressure, m)?)?;
    m.add_function(wrap_pyfunction!(casimir_free_energy, m)?)?;
    m.add_function(wrap_pyfunction!(matsubara_frequency, m)?)?;
    Ok(())
}
