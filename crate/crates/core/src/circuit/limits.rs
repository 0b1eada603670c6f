//! Closed forms: low-temperature asymptote of the RLC interaction, the self
//! free energy of one RLC oscillator, and the zero-resistance limits.

use std::f64::consts::PI;

use super::noise::weight;
use super::{InteractionSolver, ReducedParams};
use crate::constants::{BOLTZMANN, HBAR};
use crate::error::{domain, Result};

/// `16 pi^5 / 63`.
pub(crate) fn asymptote_coefficient() -> f64 {
    16.0 * PI.powi(5) / 63.0
}

/// Low-temperature RLC interaction free energy in joules,
/// `-(16 pi^5 m^2 / 63) (k_B T / hbar omega_C)^6 hbar omega_R`.
pub fn low_temperature_asymptote(m: f64, omega_r: f64, omega_c: f64, temperature: f64) -> Result<f64> {
    if !(omega_c > 0.0) {
        return Err(domain("omega_C must be positive"));
    }
    if !(omega_r >= 0.0 && temperature >= 0.0) {
        return Err(domain("omega_R and T must be non-negative"));
    }
    let t = BOLTZMANN * temperature / (HBAR * omega_c);
    Ok(low_temperature_asymptote_reduced(m, omega_r / omega_c, t) * HBAR * omega_c)
}

/// Same asymptote in units of `hbar omega_C`, with `omega_R / omega_C` and
/// `t = k_B T / hbar omega_C` given directly.
pub fn low_temperature_asymptote_reduced(m: f64, omega_r_over_omega_c: f64, t: f64) -> f64 {
    -asymptote_coefficient() * m * m * t.powi(6) * omega_r_over_omega_c
}

/// Free energy of one RLC oscillator, `k_B T log(1 - exp(-hbar omega_C / k_B T))`, joules.
pub fn self_free_energy(omega_c: f64, temperature: f64) -> Result<f64> {
    if !(omega_c > 0.0) {
        return Err(domain("omega_C must be positive"));
    }
    if !(temperature >= 0.0) {
        return Err(domain("temperature must be non-negative"));
    }
    let t = BOLTZMANN * temperature / (HBAR * omega_c);
    Ok(self_free_energy_reduced(t) * HBAR * omega_c)
}

/// `t log(1 - e^{-1/t})` in units of `hbar omega_C`.
pub fn self_free_energy_reduced(t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    t * (-(-1.0 / t).exp()).ln_1p()
}

/// Entropy of one RLC oscillator in units of `k_B`:
/// `-log(1 - e^{-1/t}) + (1/t) / (e^{1/t} - 1)`.
pub fn self_entropy_reduced(t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    -(-(-1.0 / t).exp()).ln_1p() + weight(1.0 / t)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZeroResistanceModel {
    Rl,
    /// RLC circuit at reduced temperature `t = k_B T / hbar omega_C`.
    Rlc { t: f64 },
}

/// `lim_{R -> 0+}` of the force coefficient, in units of `k_B T`.
///
/// RL: `H(0, m^2)`, evaluated by quadrature. RLC: as the resonances sharpen
/// the interaction reduces to the thermal free energy of the two normal modes
/// `omega_C / sqrt(1 +- m)` minus that of two uncoupled oscillators, whose
/// `m^2` derivative is returned. It is exponentially small, `~ exp(-1/t)`,
/// in the quantum regime.
pub fn zero_resistance_limit(m_sq: f64, model: ZeroResistanceModel) -> Result<f64> {
    if !(0.0..1.0).contains(&m_sq) {
        return Err(domain(format!("m^2 must satisfy 0 <= m^2 < 1, got {m_sq}")));
    }
    match model {
        ZeroResistanceModel::Rl => Ok(InteractionSolver::default().h_factor(&ReducedParams::rl(0.0, m_sq)?)?.value),
        ZeroResistanceModel::Rlc { t } => {
            if !(t > 0.0) {
                return Err(domain("reduced temperature must be positive"));
            }
            Ok(normal_mode_force(m_sq, t))
        }
    }
}

// d/d(m^2) of sum_{+-} log(1 - exp(-y_+-)), y_+- = 1 / (t sqrt(1 +- m)).
fn normal_mode_force(m_sq: f64, t: f64) -> f64 {
    let y_c = 1.0 / t;
    let m = m_sq.sqrt();
    // d/dy log(1 - e^{-y}) = 1 / (e^y - 1)
    let occupation = |y: f64| 1.0 / y.exp_m1();
    if m < 1e-4 {
        // even in m: the m^2 derivative at 0 is phi''(0) for phi(m) = log(1 - e^{-y(m)})
        let n = occupation(y_c);
        let dy = -0.5 * y_c;
        let d2y = 0.75 * y_c;
        return d2y * n - dy * dy * n * (1.0 + n);
    }
    let branch = |sign: f64| {
        let stiffness = 1.0 + sign * m;
        let y = y_c / stiffness.sqrt();
        let dy_dm = -0.5 * sign * y_c * stiffness.powf(-1.5);
        dy_dm * occupation(y)
    };
    (branch(1.0) + branch(-1.0)) / (2.0 * m)
}
