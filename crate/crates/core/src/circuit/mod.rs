//! Thermally driven force, free energy and entropy between two inductively
//! coupled noisy antennas, modelled as RL or series RLC circuits driven by
//! Johnson-Nyquist electromotive forces.
//!
//! All heavy lifting happens in reduced variables:
//!
//! * `rho = omega_R / omega_T` with `omega_R = R / L` and `omega_T = k_B T / hbar`,
//! * `m_sq = (M / L)^2`,
//! * `kappa = omega_C / omega_R` with `omega_C = 1 / sqrt(L C)`; zero means no capacitor.
//!
//! [`AntennaPair`] converts SI circuit values at a temperature into
//! [`ReducedParams`], and [`InteractionSolver`] turns those into energies.

mod figure1;
mod limits;
mod noise;
mod thermo;

pub use figure1::{figure1_curve, figure1_curve_with, Figure1Params};
pub use limits::{
    low_temperature_asymptote, low_temperature_asymptote_reduced, self_entropy_reduced, self_free_energy,
    self_free_energy_reduced, zero_resistance_limit, ZeroResistanceModel,
};
pub use noise::{planck_weight, planck_weight_log_derivative, reduced_impedance};
pub use thermo::{EntropyEstimate, InteractionSolver, ThermoPoint};

use crate::constants::{thermal_frequency, BOLTZMANN};
use crate::error::{domain, Result};

/// Temperature dependence of the antenna resistance.
#[derive(Debug, Clone, PartialEq)]
pub enum ResistanceLaw {
    Constant(f64),
    /// `R(T) = r_ref * (T / t_ref)^exponent`.
    PowerLaw { r_ref: f64, t_ref: f64, exponent: f64 },
    /// Piecewise-linear interpolation through `(T, R)` samples sorted by `T`;
    /// held constant outside the sampled range.
    Tabulated(Vec<(f64, f64)>),
}

impl ResistanceLaw {
    /// Impurity-free metal wire: `R` vanishes as `T^2`.
    pub fn quadratic(r_ref: f64, t_ref: f64) -> Self {
        ResistanceLaw::PowerLaw {
            r_ref,
            t_ref,
            exponent: 2.0,
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            ResistanceLaw::Constant(r) if !(*r >= 0.0 && r.is_finite()) => Err(domain("resistance must be >= 0")),
            ResistanceLaw::PowerLaw { r_ref, t_ref, exponent }
                if !(*r_ref >= 0.0 && *t_ref > 0.0 && *exponent >= 0.0 && r_ref.is_finite()) =>
            {
                Err(domain("power law needs r_ref >= 0, t_ref > 0, exponent >= 0"))
            }
            ResistanceLaw::Tabulated(rows) => {
                if rows.is_empty() {
                    return Err(domain("resistance table is empty"));
                }
                if rows.iter().any(|(t, r)| !(*t >= 0.0 && *r >= 0.0 && r.is_finite())) {
                    return Err(domain("resistance table needs T >= 0 and R >= 0"));
                }
                if rows.windows(2).any(|w| w[1].0 <= w[0].0) {
                    return Err(domain("resistance table temperatures must be strictly increasing"));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn resistance(&self, temperature: f64) -> f64 {
        match self {
            ResistanceLaw::Constant(r) => *r,
            ResistanceLaw::PowerLaw { r_ref, t_ref, exponent } => r_ref * (temperature / t_ref).powf(*exponent),
            ResistanceLaw::Tabulated(rows) => {
                let idx = rows.partition_point(|(t, _)| *t <= temperature);
                match idx {
                    0 => rows[0].1,
                    i if i == rows.len() => rows[i - 1].1,
                    i => {
                        let (t0, r0) = rows[i - 1];
                        let (t1, r1) = rows[i];
                        r0 + (r1 - r0) * (temperature - t0) / (t1 - t0)
                    }
                }
            }
        }
    }

    /// Logarithmic slope `T R'(T) / R(T)`, when known analytically.
    pub fn log_slope(&self, _temperature: f64) -> Option<f64> {
        match self {
            ResistanceLaw::Constant(_) => Some(0.0),
            ResistanceLaw::PowerLaw { exponent, .. } => Some(*exponent),
            ResistanceLaw::Tabulated(_) => None,
        }
    }
}

/// Circuit parameters of two identical antennas.
#[derive(Debug, Clone, PartialEq)]
pub struct AntennaPair {
    /// Self-inductance in henry.
    pub inductance: f64,
    /// `m = M / L`.
    pub coupling: f64,
    pub resistance: ResistanceLaw,
    /// End-point capacitance in farad; `None` gives the RL model.
    pub capacitance: Option<f64>,
}

impl AntennaPair {
    pub fn new(inductance: f64, coupling: f64, resistance: ResistanceLaw, capacitance: Option<f64>) -> Result<Self> {
        if !(inductance > 0.0 && inductance.is_finite()) {
            return Err(domain("inductance must be positive"));
        }
        if !(0.0..1.0).contains(&coupling) {
            return Err(domain(format!("coupling m = {coupling} must satisfy 0 <= m < 1")));
        }
        if let Some(c) = capacitance {
            if !(c > 0.0 && c.is_finite()) {
                return Err(domain("capacitance must be positive"));
            }
        }
        resistance.validate()?;
        Ok(Self {
            inductance,
            coupling,
            resistance,
            capacitance,
        })
    }

    pub fn rl(inductance: f64, coupling: f64, resistance: ResistanceLaw) -> Result<Self> {
        Self::new(inductance, coupling, resistance, None)
    }

    pub fn rlc(inductance: f64, coupling: f64, resistance: ResistanceLaw, capacitance: f64) -> Result<Self> {
        Self::new(inductance, coupling, resistance, Some(capacitance))
    }

    /// `omega_R = R(T) / L`.
    pub fn omega_r(&self, temperature: f64) -> f64 {
        self.resistance.resistance(temperature) / self.inductance
    }

    /// `omega_C = 1 / sqrt(L C)`, if a capacitor is present.
    pub fn omega_c(&self) -> Option<f64> {
        self.capacitance.map(|c| 1.0 / (self.inductance * c).sqrt())
    }

    /// Reduced evaluation point at `temperature`. `None` for strictly zero
    /// resistance, where the reduced frequency scale does not exist.
    pub fn reduced(&self, temperature: f64) -> Result<Option<ReducedParams>> {
        check_temperature(temperature)?;
        let omega_r = self.omega_r(temperature);
        if omega_r == 0.0 {
            return Ok(None);
        }
        let kappa = self.omega_c().map_or(0.0, |wc| wc / omega_r);
        ReducedParams::new(omega_r / thermal_frequency(temperature), self.coupling * self.coupling, kappa).map(Some)
    }

    /// `k_B T` in joules.
    pub fn thermal_energy(temperature: f64) -> f64 {
        BOLTZMANN * temperature
    }
}

pub(crate) fn check_temperature(temperature: f64) -> Result<()> {
    if temperature > 0.0 && temperature.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("temperature must be positive, got {temperature}")))
    }
}

/// Dimensionless evaluation point `(rho, m^2, kappa)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedParams {
    pub rho: f64,
    pub m_sq: f64,
    pub kappa: f64,
}

impl ReducedParams {
    pub fn new(rho: f64, m_sq: f64, kappa: f64) -> Result<Self> {
        if !(rho >= 0.0 && rho.is_finite()) {
            return Err(domain(format!("rho must be >= 0, got {rho}")));
        }
        if !(0.0..1.0).contains(&m_sq) {
            return Err(domain(format!("m^2 must satisfy 0 <= m^2 < 1, got {m_sq}")));
        }
        if !(kappa >= 0.0 && kappa.is_finite()) {
            return Err(domain(format!("kappa must be >= 0, got {kappa}")));
        }
        Ok(Self { rho, m_sq, kappa })
    }

    pub fn rl(rho: f64, m_sq: f64) -> Result<Self> {
        Self::new(rho, m_sq, 0.0)
    }

    pub fn with_m_sq(self, m_sq: f64) -> Result<Self> {
        Self::new(self.rho, m_sq, self.kappa)
    }

    pub fn with_rho(self, rho: f64) -> Result<Self> {
        Self::new(rho, self.m_sq, self.kappa)
    }

    pub fn is_rlc(&self) -> bool {
        self.kappa > 0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_invariants() {
        let r = ResistanceLaw::Constant(1.0);
        assert!(AntennaPair::rl(0.0, 0.5, r.clone()).is_err());
        assert!(AntennaPair::rl(1.0, 1.0, r.clone()).is_err());
        assert!(AntennaPair::rl(1.0, -0.1, r.clone()).is_err());
        assert!(AntennaPair::rlc(1.0, 0.5, r.clone(), 0.0).is_err());
        assert!(AntennaPair::rl(1.0, 0.5, ResistanceLaw::Constant(-1.0)).is_err());
        assert!(AntennaPair::rl(1.0, 0.5, ResistanceLaw::Tabulated(vec![(1.0, 1.0), (1.0, 2.0)])).is_err());
        assert!(AntennaPair::rl(1.0, 0.0, r).is_ok());
    }

    #[test]
    fn power_law_defaults_to_quadratic() {
        let law = ResistanceLaw::quadratic(2.0, 4.0);
        assert_eq!(law.resistance(2.0), 0.5);
        assert_eq!(law.log_slope(1.0), Some(2.0));
        assert_eq!(law.resistance(0.0), 0.0);
    }

    #[test]
    fn tabulated_interpolates_and_clamps() {
        let law = ResistanceLaw::Tabulated(vec![(1.0, 1.0), (3.0, 5.0)]);
        assert_eq!(law.resistance(2.0), 3.0);
        assert_eq!(law.resistance(0.5), 1.0);
        assert_eq!(law.resistance(9.0), 5.0);
        assert_eq!(law.log_slope(2.0), None);
    }

    #[test]
    fn reduced_params_from_pair() {
        let pair = AntennaPair::rlc(1e-7, 0.5, ResistanceLaw::Constant(1.0), 1e-12).unwrap();
        let p = pair.reduced(4.0).unwrap().unwrap();
        let omega_r = 1e7;
        assert!((p.rho - omega_r / thermal_frequency(4.0)).abs() < 1e-15);
        assert!((p.kappa - (1.0 / (1e-19f64).sqrt()) / omega_r).abs() < 1e-9);
        assert_eq!(p.m_sq, 0.25);
        let dissipationless = AntennaPair::rl(1e-7, 0.5, ResistanceLaw::Constant(0.0)).unwrap();
        assert!(dissipationless.reduced(4.0).unwrap().is_none());
        assert!(pair.reduced(0.0).is_err());
    }

    #[test]
    fn reduced_params_invariants() {
        assert!(ReducedParams::new(-1.0, 0.1, 0.0).is_err());
        assert!(ReducedParams::new(0.0, 1.0, 0.0).is_err());
        assert!(ReducedParams::new(0.0, 0.1, -1.0).is_err());
        assert!(!ReducedParams::rl(0.0, 0.1).unwrap().is_rlc());
    }
}
