//! Lifshitz free energy and pressure between two identical parallel plates at
//! finite temperature, as a Matsubara sum over imaginary frequencies
//! `xi_n = 2 pi n k_B T / hbar` with the `n = 0` term at half weight.
//!
//! Per unit area,
//!
//! ```text
//! F = (k_B T / 2 pi) sum'_n int_0^inf k dk sum_{TE,TM} ln(1 - r^2 exp(-2 q_n a))
//! ```
//!
//! with `q_n = sqrt(k^2 + xi_n^2 / c^2)` and the imaginary-frequency Fresnel
//! coefficients. Substituting `s = 2 a q_n` makes every term dimensionless; the
//! pressure is the analytic `-dF/da`, which only acts on the exponential.

use std::f64::consts::PI;

use crate::constants::{BOLTZMANN, HBAR, SPEED_OF_LIGHT};
use crate::error::{domain, Error, Result};
use crate::quadrature::{integrate_semi_infinite, QuadratureResult, QuadratureSpec};

/// Literature values for gold, rad/s.
pub const GOLD_PLASMA_FREQUENCY: f64 = 1.37e16;
pub const GOLD_RELAXATION: f64 = 4.5e13;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DielectricModel {
    /// Perfect reflector.
    Ideal,
    /// `eps(i xi) = 1 + Omega_p^2 / xi^2`.
    Plasma { plasma_frequency: f64 },
    /// `eps(i xi) = 1 + Omega_p^2 / (xi (xi + gamma))`.
    Drude { plasma_frequency: f64, relaxation: f64 },
}

impl DielectricModel {
    pub fn gold_plasma() -> Self {
        DielectricModel::Plasma {
            plasma_frequency: GOLD_PLASMA_FREQUENCY,
        }
    }

    pub fn gold_drude() -> Self {
        DielectricModel::Drude {
            plasma_frequency: GOLD_PLASMA_FREQUENCY,
            relaxation: GOLD_RELAXATION,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            DielectricModel::Ideal => "ideal",
            DielectricModel::Plasma { .. } => "plasma",
            DielectricModel::Drude { .. } => "drude",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            DielectricModel::Ideal => Ok(()),
            DielectricModel::Plasma { plasma_frequency } if plasma_frequency > 0.0 && plasma_frequency.is_finite() => Ok(()),
            DielectricModel::Drude {
                plasma_frequency,
                relaxation,
            } if plasma_frequency > 0.0 && plasma_frequency.is_finite() && relaxation >= 0.0 && relaxation.is_finite() => {
                Ok(())
            }
            _ => Err(domain("plasma frequency must be positive and relaxation non-negative")),
        }
    }

    /// `eps(i xi)` for `xi > 0`; infinite for the ideal reflector.
    pub fn permittivity_imag_freq(&self, xi: f64) -> Result<f64> {
        self.validate()?;
        if !(xi > 0.0) {
            return Err(domain(format!("imaginary frequency must be positive, got {xi}")));
        }
        Ok(self.permittivity(xi))
    }

    fn permittivity(&self, xi: f64) -> f64 {
        match *self {
            DielectricModel::Ideal => f64::INFINITY,
            DielectricModel::Plasma { plasma_frequency } => 1.0 + (plasma_frequency / xi).powi(2),
            DielectricModel::Drude {
                plasma_frequency,
                relaxation,
            } => 1.0 + plasma_frequency * plasma_frequency / (xi * (xi + relaxation)),
        }
    }

    /// `A = lim_{xi -> 0} xi^2 eps(i xi)`, rad^2/s^2. Any relaxation `gamma > 0`
    /// sends it from `Omega_p^2` to zero.
    pub fn zero_frequency_coefficient(&self) -> f64 {
        match *self {
            DielectricModel::Ideal => f64::INFINITY,
            DielectricModel::Plasma { plasma_frequency } => plasma_frequency * plasma_frequency,
            DielectricModel::Drude {
                plasma_frequency,
                relaxation,
            } => {
                if relaxation > 0.0 {
                    0.0
                } else {
                    plasma_frequency * plasma_frequency
                }
            }
        }
    }

    fn is_ideal(&self) -> bool {
        matches!(self, DielectricModel::Ideal)
    }
}

/// Fresnel reflection amplitudes at imaginary frequency. Both enter the
/// Lifshitz formula squared; the ideal reflector has `te = -1`, `tm = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reflection {
    pub te: f64,
    pub tm: f64,
}

/// Reflection coefficients at imaginary frequency `xi >= 0` and in-plane wave
/// number `k > 0` (1/m). `xi = 0` uses the exact zero-frequency limits.
pub fn reflection_coefficients(model: &DielectricModel, xi: f64, k: f64) -> Result<Reflection> {
    model.validate()?;
    if !(xi >= 0.0 && xi.is_finite()) {
        return Err(domain("imaginary frequency must be >= 0"));
    }
    if !(k > 0.0 && k.is_finite()) {
        return Err(domain("wave number must be positive"));
    }
    let c = SPEED_OF_LIGHT;
    if xi == 0.0 {
        return Ok(static_reflection(model, k, model.zero_frequency_coefficient() / (c * c)));
    }
    let q = k.hypot(xi / c);
    Ok(fresnel(model, model.permittivity(xi), q, (xi / c).powi(2)))
}

// n = 0. `reach_sq` is A / c^2 in the same length units as `s`.
fn static_reflection(model: &DielectricModel, s: f64, reach_sq: f64) -> Reflection {
    if model.is_ideal() {
        return Reflection { te: -1.0, tm: 1.0 };
    }
    let root = (s * s + reach_sq).sqrt();
    Reflection {
        te: -reach_sq / (s + root).powi(2),
        tm: 1.0,
    }
}

// n >= 1, with `s` = q and `zeta_sq` = xi^2 / c^2 in any common length unit.
// Written as differences of squares so that eps -> 1 gives exactly zero.
fn fresnel(model: &DielectricModel, eps: f64, s: f64, zeta_sq: f64) -> Reflection {
    if model.is_ideal() {
        return Reflection { te: -1.0, tm: 1.0 };
    }
    let excess = eps - 1.0;
    let s_m = (s * s + excess * zeta_sq).sqrt();
    Reflection {
        te: -excess * zeta_sq / (s + s_m).powi(2),
        tm: excess * ((eps + 1.0) * s * s - zeta_sq) / (eps * s + s_m).powi(2),
    }
}

/// How many Matsubara terms to keep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MatsubaraCutoff {
    /// Exactly `n = 0 .. terms - 1`.
    Terms(usize),
    /// Stop once a term is below `tail_tolerance` times the running sum.
    Adaptive { tail_tolerance: f64, max_terms: usize },
}

impl Default for MatsubaraCutoff {
    fn default() -> Self {
        MatsubaraCutoff::Adaptive {
            tail_tolerance: 1e-10,
            max_terms: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LifshitzConfig {
    /// Plate separation, m.
    pub separation: f64,
    /// Kelvin.
    pub temperature: f64,
    pub model: DielectricModel,
    pub cutoff: MatsubaraCutoff,
    pub k_integral_spec: QuadratureSpec,
}

impl LifshitzConfig {
    pub fn new(separation: f64, temperature: f64, model: DielectricModel) -> Self {
        Self {
            separation,
            temperature,
            model,
            cutoff: MatsubaraCutoff::default(),
            k_integral_spec: QuadratureSpec {
                abs_tol: 0.0,
                rel_tol: 1e-10,
                ..QuadratureSpec::default()
            },
        }
    }

    /// Separation giving `k_B T a / (hbar c) = tau` at this temperature.
    pub fn at_thermal_ratio(tau: f64, temperature: f64, model: DielectricModel) -> Self {
        Self::new(tau * HBAR * SPEED_OF_LIGHT / (BOLTZMANN * temperature), temperature, model)
    }

    pub fn with_model(&self, model: DielectricModel) -> Self {
        Self { model, ..*self }
    }

    pub fn with_separation(&self, separation: f64) -> Self {
        Self { separation, ..*self }
    }

    /// `k_B T a / (hbar c)`.
    pub fn thermal_ratio(&self) -> f64 {
        BOLTZMANN * self.temperature * self.separation / (HBAR * SPEED_OF_LIGHT)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.separation > 0.0 && self.separation.is_finite()) {
            return Err(domain("separation must be positive"));
        }
        if !(self.temperature > 0.0 && self.temperature.is_finite()) {
            return Err(domain("temperature must be positive"));
        }
        match self.cutoff {
            MatsubaraCutoff::Terms(n) if n >= 1 => {}
            MatsubaraCutoff::Adaptive {
                tail_tolerance,
                max_terms,
            } if tail_tolerance > 0.0 && max_terms >= 1 => {}
            _ => return Err(domain("Matsubara cutoff needs at least one term or a positive tail tolerance")),
        }
        self.model.validate()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LifshitzResult {
    pub value: f64,
    /// Bound on the omitted Matsubara tail, same units as `value`.
    pub truncation_bound: f64,
    pub quadrature_error: f64,
    pub terms: usize,
    /// False if any k-integral failed or the cutoff was reached first.
    pub converged: bool,
}

#[derive(Clone, Copy)]
enum Quantity {
    FreeEnergy,
    Pressure,
}

/// Free energy per unit area, J/m^2.
pub fn free_energy_per_area(cfg: &LifshitzConfig) -> Result<LifshitzResult> {
    matsubara_sum(cfg, Quantity::FreeEnergy)
}

/// `-dF/da`, Pa; negative is attractive.
pub fn pressure(cfg: &LifshitzConfig) -> Result<LifshitzResult> {
    matsubara_sum(cfg, Quantity::Pressure)
}

/// `xi_n = 2 pi n k_B T / hbar`.
pub fn matsubara_frequency(n: usize, temperature: f64) -> f64 {
    2.0 * PI * n as f64 * BOLTZMANN * temperature / HBAR
}

fn matsubara_sum(cfg: &LifshitzConfig, quantity: Quantity) -> Result<LifshitzResult> {
    cfg.validate()?;
    let a = cfg.separation;
    let prefactor = match quantity {
        Quantity::FreeEnergy => BOLTZMANN * cfg.temperature / (8.0 * PI * a * a),
        Quantity::Pressure => -BOLTZMANN * cfg.temperature / (8.0 * PI * a * a * a),
    };
    let (tail_tolerance, max_terms) = match cfg.cutoff {
        MatsubaraCutoff::Terms(n) => (0.0, n),
        MatsubaraCutoff::Adaptive {
            tail_tolerance,
            max_terms,
        } => (tail_tolerance, max_terms),
    };

    let first = term(cfg, 0, quantity)?;
    let mut sum = 0.5 * first.value;
    let mut error = 0.5 * first.error_estimate;
    let mut converged = first.converged;
    let mut previous = first.value.abs();
    let mut terms = 1;
    let mut truncation_bound = f64::INFINITY;
    let mut settled = false;
    while terms < max_terms {
        let r = term(cfg, terms, quantity)?;
        terms += 1;
        sum += r.value;
        error += r.error_estimate;
        converged &= r.converged;
        let size = r.value.abs();
        let ratio = if previous > 0.0 { size / previous } else { 0.0 };
        previous = size;
        if ratio < 1.0 {
            truncation_bound = size * ratio / (1.0 - ratio);
        }
        if size <= tail_tolerance * sum.abs() {
            settled = ratio < 1.0;
            break;
        }
    }
    if let MatsubaraCutoff::Adaptive { .. } = cfg.cutoff {
        if !settled {
            log::warn!("Matsubara sum reached {max_terms} terms before the tail settled");
            converged = false;
        }
    }
    Ok(LifshitzResult {
        value: prefactor * sum,
        truncation_bound: prefactor.abs() * truncation_bound,
        quadrature_error: prefactor.abs() * error,
        terms,
        converged,
    })
}

// Dimensionless term in s = 2 a q, integrated over s - zeta_n in (0, inf).
fn term(cfg: &LifshitzConfig, n: usize, quantity: Quantity) -> Result<QuadratureResult> {
    let a = cfg.separation;
    let model = cfg.model;
    let xi = matsubara_frequency(n, cfg.temperature);
    let zeta = 2.0 * a * xi / SPEED_OF_LIGHT;
    let zeta_sq = zeta * zeta;
    let eps = if n == 0 { f64::INFINITY } else { model.permittivity(xi) };
    let reach_sq = (2.0 * a / SPEED_OF_LIGHT).powi(2) * model.zero_frequency_coefficient();
    let integrand = |v: f64| {
        let s = zeta + v;
        let r = if n == 0 {
            static_reflection(&model, s, reach_sq)
        } else {
            fresnel(&model, eps, s, zeta_sq)
        };
        let decay = (-s).exp();
        let polarisations = [r.te * r.te, r.tm * r.tm];
        match quantity {
            Quantity::FreeEnergy => s * polarisations.iter().map(|r2| (-r2 * decay).ln_1p()).sum::<f64>(),
            Quantity::Pressure => s * s * polarisations.iter().map(|r2| r2 * decay / (1.0 - r2 * decay)).sum::<f64>(),
        }
    };
    let r = integrate_semi_infinite(integrand, &cfg.k_integral_spec)?;
    if !r.converged {
        log::warn!("k-integral for Matsubara term {n} did not converge");
    }
    Ok(r)
}

/// `gamma (c / (a Omega_p))^2`, rad/s: the real-frequency scale of the
/// thermally excited TE near fields between Drude plates.
pub fn evanescent_scale(separation: f64, model: &DielectricModel) -> Result<f64> {
    if !(separation > 0.0) {
        return Err(domain("separation must be positive"));
    }
    model.validate()?;
    match *model {
        DielectricModel::Drude {
            plasma_frequency,
            relaxation,
        } => Ok(relaxation * (SPEED_OF_LIGHT / (separation * plasma_frequency)).powi(2)),
        _ => Err(Error::NotApplicable("evanescent scale is defined for the Drude model only")),
    }
}
