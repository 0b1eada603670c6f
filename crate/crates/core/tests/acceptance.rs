//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits with a
//! non-zero status if any criterion fails.

use std::f64::consts::PI;
use std::time::Instant;

use johnson_casimir::circuit::{
    figure1_curve, low_temperature_asymptote_reduced, zero_resistance_limit, AntennaPair, InteractionSolver, ReducedParams,
    ResistanceLaw, ZeroResistanceModel,
};
use johnson_casimir::constants::{thermal_frequency, BOLTZMANN, HBAR, SPEED_OF_LIGHT};
use johnson_casimir::geometry::{coupling_profile, mutual_inductance, neumann_mutual_inductance, WireGeometry};
use johnson_casimir::langevin::{equipartition_covariance, simulate_coupled_rl, SimulationConfig};
use johnson_casimir::lifshitz::{pressure, DielectricModel, LifshitzConfig};
use johnson_casimir::quadrature::QuadratureSpec;

type Outcome = (bool, String);

const COUPLINGS_SQ: [f64; 4] = [0.0, 0.36, 0.64, 0.9];

fn equipartition_link() -> Outcome {
    let solver = InteractionSolver::default();
    let mut worst: f64 = 0.0;
    let mut details = Vec::new();
    for m_sq in COUPLINGS_SQ {
        let h = solver.h_factor(&ReducedParams::rl(1e-6, m_sq).unwrap()).unwrap().value;
        let err = (h - 0.5 / (1.0 - m_sq)).abs();
        worst = worst.max(err);
        details.push(format!("m^2={m_sq}: {err:.2e}"));
    }
    (worst < 1e-5, format!("|H - 1/(2(1-m^2))| at rho=1e-6 [{}], limit 1e-5", details.join(", ")))
}

fn classical_free_energy() -> Outcome {
    let solver = InteractionSolver::default();
    let mut worst: f64 = 0.0;
    let mut details = Vec::new();
    for m_sq in COUPLINGS_SQ {
        let f = solver.reduced_free_energy(&ReducedParams::rl(1e-6, m_sq).unwrap()).unwrap().value;
        let exact = -0.5 * (1.0 - m_sq).ln();
        let err = if exact == 0.0 { f.abs() } else { ((f - exact) / exact).abs() };
        worst = worst.max(err);
        details.push(format!("m^2={m_sq}: {err:.2e}"));
    }
    (worst < 1e-5, format!("relative error of F vs -(kT/2)ln(1-m^2) at rho=1e-6 [{}], limit 1e-5", details.join(", ")))
}

fn nernst_violation() -> Outcome {
    // R = r_ref (T / 100 K)^2 with rho(100 K) about 0.5
    let inductance = 1e-7;
    let r_ref = 0.5 * thermal_frequency(100.0) * inductance;
    let grid = [100.0, 10.0, 1.0, 0.1, 0.01, 1e-3, 1e-4, 1e-5];
    let solver = InteractionSolver::default();
    let mut ok = true;
    let mut details = Vec::new();
    let mut limits = Vec::new();
    for m in [0.6, 0.8] {
        let pair = AntennaPair::rl(inductance, m, ResistanceLaw::quadratic(r_ref, 100.0)).unwrap();
        let target = 0.5 * (1.0 - m * m).ln();
        let gaps: Vec<f64> = grid
            .iter()
            .map(|&t| (solver.entropy(&pair, t).unwrap().value / BOLTZMANN - target).abs())
            .collect();
        let last = gaps[gaps.len() - 1];
        let shrinking = gaps.windows(2).skip(2).all(|w| w[1] <= w[0]);
        ok &= last < 1e-4 && shrinking && target < 0.0;
        limits.push(target);
        details.push(format!("m={m}: S(1e-5 K)/k - ln(1-m^2)/2 = {last:.2e}"));
    }
    ok &= (limits[0] - limits[1]).abs() > 0.1;
    (ok, format!("{}; limits {:.6} and {:.6} k_B, tolerance 1e-4", details.join(", "), limits[0], limits[1]))
}

fn rlc_asymptote() -> Outcome {
    let mut errors = Vec::new();
    for t in [0.1, 0.05, 0.02] {
        let f = figure1_curve(&[t]).unwrap()[0].free_energy;
        let asymptote = low_temperature_asymptote_reduced(0.8, 5.0 * t * t, t);
        errors.push((t, (f / asymptote - 1.0).abs()));
    }
    let ok = errors.iter().all(|(_, e)| *e < 0.05) && errors.windows(2).all(|w| w[1].1 < w[0].1);
    let text: Vec<String> = errors.iter().map(|(t, e)| format!("t={t}: {e:.3e}")).collect();
    (ok, format!("relative error vs -(16 pi^5 m^2/63) t^6 omega_R [{}], limit 5e-2", text.join(", ")))
}

fn figure1_shape() -> Outcome {
    let grid: Vec<f64> = (1..=200).map(|i| i as f64 * 0.01).collect();
    let curve = figure1_curve(&grid).unwrap();
    let peak = curve.iter().map(|p| p.free_energy.abs()).fold(0.0, f64::max);
    let vanishes = curve[0].free_energy.abs() < 1e-8 * peak;
    let rising: Vec<f64> = curve
        .windows(2)
        .filter(|w| w[1].free_energy > w[0].free_energy)
        .map(|w| w[0].temperature)
        .collect();
    let negative_entropy = curve.iter().filter(|p| p.entropy < 0.0).count();
    let min_total = curve.iter().filter_map(|p| p.total_entropy).fold(f64::INFINITY, f64::min);
    let converged = curve.iter().all(|p| p.converged);
    let ok = vanishes && !rising.is_empty() && negative_entropy > 0 && min_total >= -1e-10 && converged;
    (
        ok,
        format!(
            "F(0.01)={:.3e} (peak |F| {peak:.3e}); F rises on {} grid steps from t={:.2} to t={:.2}; min total entropy {min_total:.3e} k_B",
            curve[0].free_energy,
            rising.len(),
            rising.first().copied().unwrap_or(f64::NAN),
            rising.last().copied().unwrap_or(f64::NAN),
        ),
    )
}

fn zero_resistance() -> Outcome {
    let t = 0.1;
    let solver = InteractionSolver::default();
    let force = |ratio: f64| t * solver.h_factor(&ReducedParams::new(ratio / t, 0.64, 1.0 / ratio).unwrap()).unwrap().value;
    let values: Vec<f64> = [1e-2, 1e-3, 1e-4].iter().map(|&r| force(r)).collect();
    let ratios = [values[0] / values[1], values[1] / values[2]];
    let rlc_ok = ratios.iter().all(|r| (r - 10.0).abs() <= 0.5);
    let rl_limit = zero_resistance_limit(0.64, ZeroResistanceModel::Rl).unwrap();
    let rl_small = solver.h_factor(&ReducedParams::rl(1e-9, 0.64).unwrap()).unwrap().value;
    let rl_ok = (rl_limit - 0.5 / 0.36).abs() < 1e-9 && (rl_small - 0.5 / 0.36).abs() < 1e-6;
    let normal_modes = t * zero_resistance_limit(0.64, ZeroResistanceModel::Rlc { t }).unwrap();
    (
        rlc_ok && rl_ok,
        format!(
            "RLC t*H at omega_R/omega_C=1e-2,1e-3,1e-4: {:.4e}, {:.4e}, {:.4e}; ratios {:.4}, {:.4} (need 10 +- 0.5); \
             normal-mode limit {normal_modes:.4e}; RL H(rho=1e-9) = {rl_small:.8} vs {:.8}",
            values[0],
            values[1],
            values[2],
            ratios[0],
            ratios[1],
            0.5 / 0.36
        ),
    )
}

fn langevin_oracle() -> Outcome {
    let cfg = SimulationConfig::default();
    let mut ok = true;
    let mut details = Vec::new();
    for m in [0.0, 0.3, 0.8] {
        let sim = simulate_coupled_rl(1.0, m, 1.0, 1.0, &cfg).unwrap();
        let exact = equipartition_covariance(1.0, m, 1.0).unwrap().cov_i12;
        let sigmas = (sim.cov_i12 - exact).abs() / sim.standard_error;
        ok &= sigmas < 3.0;
        details.push(format!("m={m}: {:.5} vs {:.5} ({sigmas:.2} SE)", sim.cov_i12, exact));
    }
    let a = simulate_coupled_rl(1.0, 0.8, 1.0, 1.0, &cfg).unwrap();
    let b = simulate_coupled_rl(1.0, 0.8, 1.0, 1.0, &cfg).unwrap();
    let same = [a.var_i1, a.var_i2, a.cov_i12, a.standard_error]
        .iter()
        .zip([b.var_i1, b.var_i2, b.cov_i12, b.standard_error])
        .all(|(x, y)| x.to_bits() == y.to_bits());
    ok &= same;
    (ok, format!("<i1 i2> in units kT/L: {}; reproducible: {same}", details.join(", ")))
}

fn lifshitz_halving() -> Outcome {
    let mut ok = true;
    let mut details = Vec::new();
    for tau in [5.0, 10.0] {
        let cfg = LifshitzConfig::at_thermal_ratio(tau, 300.0, DielectricModel::gold_drude());
        let drude = pressure(&cfg).unwrap();
        let ideal = pressure(&cfg.with_model(DielectricModel::Ideal)).unwrap();
        let ratio = drude.value / ideal.value;
        ok &= (ratio - 0.5).abs() < 0.005 && drude.converged && ideal.converged;
        details.push(format!("kTa/(hbar c)={tau}: ratio {ratio:.8}"));
    }
    let plasma_a = DielectricModel::gold_plasma().zero_frequency_coefficient();
    let drude_a = DielectricModel::gold_drude().zero_frequency_coefficient();
    let tiny_a = DielectricModel::Drude {
        plasma_frequency: 1.37e16,
        relaxation: 1e-30,
    }
    .zero_frequency_coefficient();
    ok &= plasma_a == 1.37e16 * 1.37e16 && drude_a == 0.0 && tiny_a == 0.0;
    (ok, format!("{}; A(plasma)={plasma_a:.4e}, A(drude)={drude_a}, A(drude, gamma=1e-30)={tiny_a}", details.join(", ")))
}

fn lifshitz_zero_temperature() -> Outcome {
    let a = 1e-6;
    let omega_p = 1000.0 * SPEED_OF_LIGHT / a;
    let temperature = 1e-3 * HBAR * SPEED_OF_LIGHT / (BOLTZMANN * a);
    let cfg = LifshitzConfig::new(a, temperature, DielectricModel::Plasma { plasma_frequency: omega_p });
    let p = pressure(&cfg).unwrap();
    let exact = -PI * PI * HBAR * SPEED_OF_LIGHT / (240.0 * a.powi(4));
    let err = (p.value / exact - 1.0).abs();
    (
        err < 0.02 && p.converged,
        format!("Omega_p a/c=1000, kTa/(hbar c)=1e-3: P={:.6e} Pa vs {exact:.6e} Pa, relative {err:.3e} over {} terms, limit 2e-2", p.value, p.terms),
    )
}

fn geometry_oracle() -> Outcome {
    let spec = QuadratureSpec::with_tolerances(1e-12, 0.0);
    let mut ok = true;
    let mut details = Vec::new();
    for ratio in [2.0, 10.0, 100.0] {
        let g = WireGeometry::new(0.1, 1e-6, 0.1 / ratio).unwrap();
        let closed = mutual_inductance(&g).unwrap();
        let neumann = neumann_mutual_inductance(&g, &spec).unwrap();
        let err = ((closed - neumann) / neumann).abs();
        let m = coupling_profile(&g).unwrap().coupling;
        ok &= err < 1e-6 && m < 1.0;
        details.push(format!("l/d={ratio}: {err:.2e}, m={m:.4}"));
    }
    (ok, format!("closed form vs Neumann integral [{}], limit 1e-6", details.join(", ")))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("equipartition-link", equipartition_link),
        ("classical-free-energy", classical_free_energy),
        ("nernst-violation", nernst_violation),
        ("rlc-low-temperature-asymptote", rlc_asymptote),
        ("figure1-shape", figure1_shape),
        ("rlc-zero-resistance-limit", zero_resistance),
        ("langevin-oracle", langevin_oracle),
        ("lifshitz-halving", lifshitz_halving),
        ("lifshitz-zero-temperature", lifshitz_zero_temperature),
        ("geometry-oracle", geometry_oracle),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (ok, detail) = check();
        let verdict = if ok { "PASS" } else { "FAIL" };
        failures += usize::from(!ok);
        println!("{verdict} [{}] {name} ({:.2}s): {detail}", i + 1, start.elapsed().as_secs_f64());
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
