//! Stochastic time-domain simulation of two inductively coupled RL circuits
//! driven by classical Johnson-Nyquist noise, and the equipartition closed
//! forms it is checked against.
//!
//! The circuit equations `K di/dt = -R i + e(t)` with `K = [[L, M], [M, L]]`
//! decouple into the symmetric and antisymmetric current modes
//! `(i1 +- i2) / sqrt(2)`, each an Ornstein-Uhlenbeck process with inductance
//! `L +- M`. Each noise source is white with two-sided intensity
//! `<e(t) e(t')> = 2 k_B T R delta(t - t')`; with this normalisation a single
//! circuit relaxes to `<i^2> = k_B T / L`, which the tests assert.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::error::{domain, Error, Result};

/// Identifier of the pseudo-random generator, recorded in outputs.
pub const GENERATOR_ID: &str = "rand_chacha::ChaCha8Rng/0.9; stream = ensemble member; rand_distr::StandardNormal/0.5";

/// Largest accepted time step in units of `L / R`.
pub const MAX_TIME_STEP: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Integrator {
    /// Exact transition density of the linear SDE over one step.
    Exact,
    /// First-order Euler-Maruyama, kept for validation.
    EulerMaruyama,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationConfig {
    /// Time step in units of `L / R`.
    pub time_step: f64,
    pub steps: usize,
    pub burn_in: usize,
    pub ensemble: usize,
    pub seed: u64,
    pub integrator: Integrator,
}

impl Default for SimulationConfig {
    fn default() -> Self {
        Self {
            time_step: 0.05,
            steps: 250_000,
            burn_in: 2_000,
            ensemble: 40,
            seed: 20_070_815,
            integrator: Integrator::Exact,
        }
    }
}

impl SimulationConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.time_step > 0.0) {
            return Err(domain("time step must be positive"));
        }
        if !(self.time_step < MAX_TIME_STEP) {
            return Err(Error::Stability {
                dt: self.time_step,
                limit: MAX_TIME_STEP,
            });
        }
        if self.steps <= self.burn_in {
            return Err(domain("steps must exceed burn_in"));
        }
        if self.ensemble < 1 {
            return Err(domain("ensemble must be >= 1"));
        }
        Ok(())
    }
}

/// Stationary current (co)variances. Units are those of `k_B T / L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceEstimate {
    pub var_i1: f64,
    pub var_i2: f64,
    pub cov_i12: f64,
    /// Standard error of `cov_i12`; zero for exact results.
    pub standard_error: f64,
    pub samples: usize,
}

fn check_passive(inductance: f64, mutual: f64) -> Result<()> {
    if !(inductance > 0.0) {
        return Err(domain("inductance must be positive"));
    }
    if !(mutual.abs() < inductance) {
        return Err(Error::Passivity { inductance, mutual });
    }
    Ok(())
}

/// Classical equilibrium covariance `k_B T K^-1`.
pub fn equipartition_covariance(inductance: f64, mutual: f64, thermal_energy: f64) -> Result<CovarianceEstimate> {
    check_passive(inductance, mutual)?;
    let det = inductance * inductance - mutual * mutual;
    let var = thermal_energy * inductance / det;
    Ok(CovarianceEstimate {
        var_i1: var,
        var_i2: var,
        cov_i12: -thermal_energy * mutual / det,
        standard_error: 0.0,
        samples: 0,
    })
}

/// `H(0, m^2)` implied by the equipartition covariance through
/// `F = <i1 i2> grad(M) = -k_B T H grad(m^2)`, i.e. `1 / (2 (1 - m^2))`.
pub fn oracle_h_zero(m_sq: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&m_sq) {
        return Err(domain(format!("m^2 must satisfy 0 <= m^2 < 1, got {m_sq}")));
    }
    let m = m_sq.sqrt();
    // unit L and k_B T
    let cov = equipartition_covariance(1.0, m, 1.0)?;
    // grad(m^2) = 2 m grad(M) / L, so H = -<i1 i2> L / (2 m k_B T); at m = 0 the
    // ratio is var / 2 by continuity.
    Ok(if m > 0.0 { -cov.cov_i12 / (2.0 * m) } else { 0.5 * cov.var_i1 })
}

/// Running sums of one trajectory, reduced to per-member averages.
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    i1_sq: f64,
    i2_sq: f64,
    i1_i2: f64,
    samples: usize,
}

/// Simulates the coupled RL circuits with inductance `inductance`, mutual
/// inductance `mutual`, resistance `resistance` at thermal energy `k_B T`.
/// Returns the time-averaged covariance with a standard error computed from
/// the spread between independent batches.
pub fn simulate_coupled_rl(
    inductance: f64,
    mutual: f64,
    resistance: f64,
    thermal_energy: f64,
    cfg: &SimulationConfig,
) -> Result<CovarianceEstimate> {
    check_passive(inductance, mutual)?;
    cfg.validate()?;
    if !(resistance > 0.0) {
        return Err(domain("simulation needs a positive resistance"));
    }
    if !(thermal_energy >= 0.0) {
        return Err(domain("thermal energy must be non-negative"));
    }
    let dt = cfg.time_step * inductance / resistance;
    let model = Model::new(inductance, mutual, resistance, thermal_energy, dt, cfg.integrator);

    // Each member is split into batches long compared with the slowest
    // relaxation time so that batch means are nearly independent.
    let recorded = cfg.steps - cfg.burn_in;
    let batches_per_member = if cfg.ensemble >= 16 { 1 } else { 16usize.div_ceil(cfg.ensemble) };
    let batch_len = (recorded / batches_per_member).max(1);

    let batches: Vec<Moments> = (0..cfg.ensemble)
        .into_par_iter()
        .map(|member| model.run_member(cfg.seed, member as u64, cfg.burn_in, recorded, batch_len))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();

    let n = batches.len() as f64;
    let mean = |get: fn(&Moments) -> f64| batches.iter().map(get).sum::<f64>() / n;
    let var_i1 = mean(|m| m.i1_sq);
    let var_i2 = mean(|m| m.i2_sq);
    let cov_i12 = mean(|m| m.i1_i2);
    let spread = batches.iter().map(|m| (m.i1_i2 - cov_i12).powi(2)).sum::<f64>() / (n - 1.0).max(1.0);
    Ok(CovarianceEstimate {
        var_i1,
        var_i2,
        cov_i12,
        standard_error: (spread / n).sqrt(),
        samples: batches.iter().map(|m| m.samples).sum(),
    })
}

/// Propagator of the two decoupled modes.
struct Model {
    integrator: Integrator,
    // exact update: s' = decay * s + kick * xi, per mode (symmetric, antisymmetric)
    decay: [f64; 2],
    kick: [f64; 2],
    // Euler-Maruyama in the circuit basis
    drift: [[f64; 2]; 2],
    noise: [[f64; 2]; 2],
}

impl Model {
    fn new(inductance: f64, mutual: f64, resistance: f64, thermal_energy: f64, dt: f64, integrator: Integrator) -> Self {
        let mut decay = [0.0; 2];
        let mut kick = [0.0; 2];
        for (k, mode_inductance) in [inductance + mutual, inductance - mutual].into_iter().enumerate() {
            let rate = resistance / mode_inductance;
            let a = (-rate * dt).exp();
            // stationary variance of the mode is D / (2 rate), D = 2 k_B T R / L_mode^2
            let diffusion = 2.0 * thermal_energy * resistance / (mode_inductance * mode_inductance);
            decay[k] = a;
            kick[k] = (diffusion / (2.0 * rate) * -(-2.0 * rate * dt).exp_m1()).sqrt();
        }
        let det = inductance * inductance - mutual * mutual;
        let inv = [[inductance / det, -mutual / det], [-mutual / det, inductance / det]];
        let amplitude = (2.0 * thermal_energy * resistance * dt).sqrt();
        let drift = [
            [-resistance * inv[0][0] * dt, -resistance * inv[0][1] * dt],
            [-resistance * inv[1][0] * dt, -resistance * inv[1][1] * dt],
        ];
        let noise = [
            [inv[0][0] * amplitude, inv[0][1] * amplitude],
            [inv[1][0] * amplitude, inv[1][1] * amplitude],
        ];
        Self {
            integrator,
            decay,
            kick,
            drift,
            noise,
        }
    }

    fn run_member(&self, seed: u64, member: u64, burn_in: usize, recorded: usize, batch_len: usize) -> Vec<Moments> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(member);
        let mut gauss = || -> f64 { StandardNormal.sample(&mut rng) };
        let mut i = [0.0f64; 2];
        let mut step = |i: &mut [f64; 2]| {
            let (xi1, xi2) = (gauss(), gauss());
            match self.integrator {
                Integrator::Exact => {
                    let s = std::f64::consts::FRAC_1_SQRT_2;
                    let sym = s * (i[0] + i[1]);
                    let anti = s * (i[0] - i[1]);
                    let sym = self.decay[0] * sym + self.kick[0] * xi1;
                    let anti = self.decay[1] * anti + self.kick[1] * xi2;
                    *i = [s * (sym + anti), s * (sym - anti)];
                }
                Integrator::EulerMaruyama => {
                    let d = &self.drift;
                    let n = &self.noise;
                    let next = [
                        i[0] + d[0][0] * i[0] + d[0][1] * i[1] + n[0][0] * xi1 + n[0][1] * xi2,
                        i[1] + d[1][0] * i[0] + d[1][1] * i[1] + n[1][0] * xi1 + n[1][1] * xi2,
                    ];
                    *i = next;
                }
            }
        };
        for _ in 0..burn_in {
            step(&mut i);
        }
        let mut out = Vec::new();
        let mut acc = Moments::default();
        for n in 0..recorded {
            step(&mut i);
            acc.i1_sq += i[0] * i[0];
            acc.i2_sq += i[1] * i[1];
            acc.i1_i2 += i[0] * i[1];
            acc.samples += 1;
            if acc.samples == batch_len || n + 1 == recorded {
                if acc.samples == batch_len {
                    let k = acc.samples as f64;
                    out.push(Moments {
                        i1_sq: acc.i1_sq / k,
                        i2_sq: acc.i2_sq / k,
                        i1_i2: acc.i1_i2 / k,
                        samples: acc.samples,
                    });
                }
                acc = Moments::default();
            }
        }
        out
    }
}
