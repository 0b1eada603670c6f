use std::cell::{Cell, RefCell};
use std::f64::consts::PI;

use num_complex::Complex64;

use super::limits::self_entropy_reduced;
use super::noise::{impedance, weight, weight_excess};
use super::{check_temperature, AntennaPair, ReducedParams};
use crate::constants::{BOLTZMANN, HBAR};
use crate::error::{domain, Result};
use crate::quadrature::{derivative_scalar, integrate_semi_infinite_with_breakpoints, QuadratureResult, QuadratureSpec};

/// Thermodynamic state of the antenna pair at one temperature.
///
/// Units follow the caller: SI (kelvin, joule, J/K) for [`InteractionSolver::thermo_point`],
/// reduced (`t`, `hbar omega_C`, `k_B`) for the Fig. 1 style curves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermoPoint {
    pub temperature: f64,
    pub free_energy: f64,
    pub entropy: f64,
    /// `k_B T H`, the factor multiplying `-grad(m^2)` in the force.
    pub force_coefficient: f64,
    /// Interaction entropy plus the self entropies of both circuits (RLC only).
    pub total_entropy: Option<f64>,
    pub quadrature_error: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyEstimate {
    pub value: f64,
    pub error_estimate: f64,
    pub converged: bool,
    /// The resistance law had no analytic derivative, so the entropy was
    /// obtained by differentiating the free energy numerically.
    pub numerical_fallback: bool,
}

/// Evaluates the frequency integrals behind the force, free energy and
/// entropy of the coupled circuits.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct InteractionSolver {
    pub quadrature: QuadratureSpec,
}

// Pieces of the integrands at one reduced frequency x.
struct Sample {
    z: Complex64,
    w_sq: Complex64,
    // Im log(1 + w^2) on the principal branch
    phase: f64,
}

fn sample(x: f64, p: &ReducedParams) -> Sample {
    let z = impedance(x, p.kappa);
    let inv_z = z.inv();
    let w_sq = inv_z * inv_z * (x * x * p.m_sq);
    let one_plus = Complex64::new(1.0, 0.0) + w_sq;
    let phase = one_plus.im.atan2(one_plus.re);
    // 1 + s w^2 for s in [0, m^2] never crosses the negative real axis, so the
    // principal branch is the continuation from m = 0.
    debug_assert!(phase.abs() < PI);
    Sample { z, w_sq, phase }
}

fn breakpoints(p: &ReducedParams) -> Vec<f64> {
    let mut points = vec![1.0];
    if p.rho > 0.0 {
        points.push(1.0 / p.rho);
    }
    if p.is_rlc() {
        let m = p.m_sq.sqrt();
        for stiffness in [1.0 + m, 1.0, 1.0 - m] {
            let centre = p.kappa / stiffness.sqrt();
            // resonance half width in x is about 1 / (2 stiffness)
            let width = 0.5 / stiffness;
            points.extend([centre, centre - 5.0 * width, centre + 5.0 * width, centre - 50.0 * width, centre + 50.0 * width]);
        }
    }
    points
}

impl InteractionSolver {
    pub fn new(quadrature: QuadratureSpec) -> Self {
        Self { quadrature }
    }

    fn integrate(&self, p: &ReducedParams, f: impl Fn(f64) -> f64) -> Result<QuadratureResult> {
        Ok(integrate_semi_infinite_with_breakpoints(f, &self.quadrature, &breakpoints(p))?)
    }

    /// `H(rho, m^2, kappa) = (1/pi) int_0^inf x E(x rho) Im[z^2 + x^2 m^2]^-1 dx`.
    pub fn h_factor(&self, p: &ReducedParams) -> Result<QuadratureResult> {
        self.integrate(p, |x| {
            let z = impedance(x, p.kappa);
            let det = z * z + x * x * p.m_sq;
            x * weight(x * p.rho) * det.inv().im / PI
        })
    }

    /// Interaction free energy in units of `k_B T`:
    /// `(1/pi) int_0^inf (dx/x) E(x rho) Im log[1 + (x m / z)^2]`.
    pub fn reduced_free_energy(&self, p: &ReducedParams) -> Result<QuadratureResult> {
        if p.m_sq == 0.0 {
            return Ok(exact_zero());
        }
        self.integrate(p, |x| weight(x * p.rho) * sample(x, p).phase / (PI * x))
    }

    /// Interaction entropy in units of `k_B`, differentiating the free energy
    /// under the integral sign. `log_slope = T R'(T) / R(T)`.
    ///
    /// At fixed angular frequency, `T d/dT` acts on the noise weight through
    /// `y = hbar omega / k_B T` and on the phase through `R(T)`.
    pub fn reduced_entropy(&self, p: &ReducedParams, log_slope: f64) -> Result<QuadratureResult> {
        if !log_slope.is_finite() {
            return Err(domain("resistance log-slope must be finite"));
        }
        if p.m_sq == 0.0 {
            return Ok(exact_zero());
        }
        self.integrate(p, |x| {
            let y = x * p.rho;
            let e = weight(y);
            let s = sample(x, p);
            // R d/dR of log(1 + w^2) at fixed omega
            let resistance_term = (-2.0 * s.w_sq / (s.z * (1.0 + s.w_sq))).im;
            // (1 + T d/dT) applied to E(y) Im log(...)
            let total = e * (1.0 + weight_excess(y)) * s.phase + e * log_slope * resistance_term;
            -total / (PI * x)
        })
    }

    /// `k_B T H` in joules. Zero for strictly dissipationless wires.
    pub fn force_coefficient(&self, pair: &AntennaPair, temperature: f64) -> Result<QuadratureResult> {
        match pair.reduced(temperature)? {
            None => Ok(exact_zero()),
            Some(p) => Ok(self.h_factor(&p)?.scaled(BOLTZMANN * temperature)),
        }
    }

    /// Interaction free energy in joules.
    pub fn free_energy(&self, pair: &AntennaPair, temperature: f64) -> Result<QuadratureResult> {
        match pair.reduced(temperature)? {
            None => Ok(exact_zero()),
            Some(p) => Ok(self.reduced_free_energy(&p)?.scaled(BOLTZMANN * temperature)),
        }
    }

    /// Interaction entropy in J/K. Falls back to numerical differentiation
    /// (and says so) when the resistance law has no analytic derivative.
    pub fn entropy(&self, pair: &AntennaPair, temperature: f64) -> Result<EntropyEstimate> {
        check_temperature(temperature)?;
        let Some(log_slope) = pair.resistance.log_slope(temperature) else {
            log::warn!("tabulated resistance law: entropy from numerical differentiation at T = {temperature}");
            return self.entropy_by_differentiation(pair, temperature);
        };
        match pair.reduced(temperature)? {
            None => Ok(EntropyEstimate {
                value: 0.0,
                error_estimate: 0.0,
                converged: true,
                numerical_fallback: false,
            }),
            Some(p) => {
                let s = self.reduced_entropy(&p, log_slope)?.scaled(BOLTZMANN);
                Ok(EntropyEstimate {
                    value: s.value,
                    error_estimate: s.error_estimate,
                    converged: s.converged,
                    numerical_fallback: false,
                })
            }
        }
    }

    /// `S = -dF/dT` by Richardson-extrapolated central differences.
    pub fn entropy_by_differentiation(&self, pair: &AntennaPair, temperature: f64) -> Result<EntropyEstimate> {
        check_temperature(temperature)?;
        let failure = RefCell::new(None);
        let converged = Cell::new(true);
        let free_energy = |t: f64| match self.free_energy(pair, t) {
            Ok(r) => {
                converged.set(converged.get() && r.converged);
                r.value
            }
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        };
        let d = derivative_scalar(free_energy, temperature, 0.1 * temperature);
        if let Some(e) = failure.into_inner() {
            return Err(e);
        }
        let d = d?;
        Ok(EntropyEstimate {
            value: -d.value,
            error_estimate: d.error_estimate,
            converged: converged.get() && !d.non_smooth,
            numerical_fallback: true,
        })
    }

    /// Interaction entropy plus the self entropies of both RLC circuits, J/K.
    pub fn total_entropy(&self, pair: &AntennaPair, temperature: f64) -> Result<EntropyEstimate> {
        let omega_c = pair
            .omega_c()
            .ok_or_else(|| domain("total entropy needs the RLC model (capacitance missing)"))?;
        let interaction = self.entropy(pair, temperature)?;
        let t = BOLTZMANN * temperature / (HBAR * omega_c);
        Ok(EntropyEstimate {
            value: interaction.value + 2.0 * BOLTZMANN * self_entropy_reduced(t),
            ..interaction
        })
    }

    /// Force coefficient, free energy and entropies at one temperature, SI units.
    pub fn thermo_point(&self, pair: &AntennaPair, temperature: f64) -> Result<ThermoPoint> {
        let force = self.force_coefficient(pair, temperature)?;
        let free = self.free_energy(pair, temperature)?;
        let entropy = self.entropy(pair, temperature)?;
        let total_entropy = match pair.omega_c() {
            Some(omega_c) => {
                let t = BOLTZMANN * temperature / (HBAR * omega_c);
                Some(entropy.value + 2.0 * BOLTZMANN * self_entropy_reduced(t))
            }
            None => None,
        };
        Ok(ThermoPoint {
            temperature,
            free_energy: free.value,
            entropy: entropy.value,
            force_coefficient: force.value,
            total_entropy,
            quadrature_error: force.error_estimate + free.error_estimate + entropy.error_estimate,
            converged: force.converged && free.converged && entropy.converged,
        })
    }
}

fn exact_zero() -> QuadratureResult {
    QuadratureResult {
        value: 0.0,
        error_estimate: 0.0,
        evaluations: 0,
        converged: true,
    }
}
