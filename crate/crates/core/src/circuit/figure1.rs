use rayon::prelude::*;

use super::limits::self_entropy_reduced;
use super::{InteractionSolver, ReducedParams, ThermoPoint};
use crate::error::{domain, Result};
use crate::quadrature::QuadratureSpec;

/// RLC antennas whose resistance follows `omega_R(t) = prefactor * t^exponent * omega_C`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Figure1Params {
    pub m: f64,
    pub omega_r_prefactor: f64,
    pub resistance_exponent: f64,
}

impl Default for Figure1Params {
    fn default() -> Self {
        Self {
            m: 0.8,
            omega_r_prefactor: 5.0,
            resistance_exponent: 2.0,
        }
    }
}

impl Figure1Params {
    /// Reduced point at `t = k_B T / hbar omega_C`.
    pub fn reduced(&self, t: f64) -> Result<ReducedParams> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(domain(format!("reduced temperature must be positive, got {t}")));
        }
        let omega_r = self.omega_r_prefactor * t.powf(self.resistance_exponent);
        if !(omega_r > 0.0) {
            return Err(domain("omega_R must be positive"));
        }
        ReducedParams::new(omega_r / t, self.m * self.m, 1.0 / omega_r)
    }
}

fn curve_solver() -> InteractionSolver {
    // The low-t free energy is many orders below hbar omega_C; rely on the
    // relative tolerance only.
    InteractionSolver::new(QuadratureSpec {
        abs_tol: 0.0,
        ..QuadratureSpec::default()
    })
}

/// Interaction free energy (units of `hbar omega_C`), entropies (units of
/// `k_B`) and force coefficient versus `t`, for `m = 0.8` and
/// `omega_R = 5 t^2 omega_C`.
pub fn figure1_curve(t_grid: &[f64]) -> Result<Vec<ThermoPoint>> {
    figure1_curve_with(&Figure1Params::default(), &curve_solver(), t_grid)
}

pub fn figure1_curve_with(params: &Figure1Params, solver: &InteractionSolver, t_grid: &[f64]) -> Result<Vec<ThermoPoint>> {
    t_grid.par_iter().map(|&t| point(params, solver, t)).collect()
}

fn point(params: &Figure1Params, solver: &InteractionSolver, t: f64) -> Result<ThermoPoint> {
    let p = params.reduced(t)?;
    let free = solver.reduced_free_energy(&p)?;
    let entropy = solver.reduced_entropy(&p, params.resistance_exponent)?;
    let h = solver.h_factor(&p)?;
    Ok(ThermoPoint {
        temperature: t,
        free_energy: t * free.value,
        entropy: entropy.value,
        force_coefficient: t * h.value,
        total_entropy: Some(entropy.value + 2.0 * self_entropy_reduced(t)),
        quadrature_error: t * free.error_estimate + entropy.error_estimate + t * h.error_estimate,
        converged: free.converged && entropy.converged && h.converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::low_temperature_asymptote_reduced;

    #[test]
    fn deep_quantum_regime_follows_asymptote() {
        for t in [0.01, 0.005] {
            let pts = figure1_curve(&[t]).unwrap();
            let asymptote = low_temperature_asymptote_reduced(0.8, 5.0 * t * t, t);
            let rel = (pts[0].free_energy / asymptote - 1.0).abs();
            assert!(pts[0].converged);
            assert!(rel < 0.05, "t={t}: {} vs {asymptote}", pts[0].free_energy);
        }
    }

    #[test]
    fn zero_coupling_gives_flat_curve() {
        let params = Figure1Params {
            m: 0.0,
            ..Figure1Params::default()
        };
        let pts = figure1_curve_with(&params, &curve_solver(), &[0.1, 0.5, 1.5]).unwrap();
        assert!(pts.iter().all(|p| p.free_energy == 0.0 && p.entropy == 0.0));
    }

    #[test]
    fn rejects_non_positive_t() {
        assert!(figure1_curve(&[0.0]).is_err());
    }
}
