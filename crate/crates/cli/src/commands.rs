use rayon::prelude::*;

use johnson_casimir::circuit::{figure1_curve_with, AntennaPair, Figure1Params, InteractionSolver, ReducedParams};
use johnson_casimir::geometry::{
    coupling_profile, mutual_inductance, neumann_mutual_inductance, self_inductance, WireGeometry,
};
use johnson_casimir::langevin::{equipartition_covariance, oracle_h_zero, simulate_coupled_rl, SimulationConfig};
use johnson_casimir::lifshitz::{free_energy_per_area, pressure, DielectricModel, LifshitzConfig, MatsubaraCutoff};
use johnson_casimir::quadrature::QuadratureSpec;

use crate::config::{
    check_grid, AntennaScan, Figure1Config, GeometryConfig, LifshitzScanConfig, OracleConfig, QuadratureConfig,
    ReducedScan, RunConfig, SiScan,
};
use crate::error::{CliError, CliResult};
use crate::output::{Cell, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    NotConverged,
    OracleFailed,
}

pub struct Report {
    pub table: Table,
    pub status: Status,
}

impl Report {
    fn from_convergence(table: Table, all_converged: bool) -> Self {
        let status = if all_converged { Status::Ok } else { Status::NotConverged };
        Self { table, status }
    }
}

pub fn antenna_scan(cfg: &RunConfig) -> CliResult<Report> {
    match cfg.parameters::<AntennaScan>()? {
        AntennaScan::Reduced(scan) => reduced_scan(&scan),
        AntennaScan::Si(scan) => si_scan(&scan),
    }
}

fn reduced_scan(scan: &ReducedScan) -> CliResult<Report> {
    check_grid("parameters.reduced.rho_grid", &scan.rho_grid)?;
    let base = ReducedParams::new(scan.rho_grid[0], scan.m_sq, scan.kappa)?;
    let solver = InteractionSolver::new(QuadratureConfig::spec(scan.quadrature, QuadratureSpec::default()));
    let rows: Vec<_> = scan
        .rho_grid
        .par_iter()
        .map(|&rho| -> CliResult<_> {
            let p = base.with_rho(rho)?;
            let free = solver.reduced_free_energy(&p)?;
            let entropy = solver.reduced_entropy(&p, scan.resistance_log_slope)?;
            let h = solver.h_factor(&p)?;
            Ok((rho, free, entropy, h))
        })
        .collect::<CliResult<_>>()?;

    let mut table = Table::new(vec![
        "rho",
        "m_sq",
        "kappa",
        "free_energy_kt",
        "entropy_kb",
        "force_coefficient_kt",
        "quadrature_error",
        "converged",
    ]);
    let mut all = true;
    for (rho, free, entropy, h) in rows {
        let converged = free.converged && entropy.converged && h.converged;
        all &= converged;
        table.push(vec![
            rho.into(),
            scan.m_sq.into(),
            scan.kappa.into(),
            free.value.into(),
            entropy.value.into(),
            h.value.into(),
            (free.error_estimate + entropy.error_estimate + h.error_estimate).into(),
            converged.into(),
        ]);
    }
    Ok(Report::from_convergence(table, all))
}

fn si_scan(scan: &SiScan) -> CliResult<Report> {
    check_grid("parameters.si.temperature_grid_kelvin", &scan.temperature_grid_kelvin)?;
    let pair = AntennaPair::new(scan.inductance_henry, scan.coupling, scan.resistance.law(), scan.capacitance_farad)?;
    let solver = InteractionSolver::new(QuadratureConfig::spec(scan.quadrature, QuadratureSpec::default()));
    let points: Vec<_> = scan
        .temperature_grid_kelvin
        .par_iter()
        .map(|&t| solver.thermo_point(&pair, t))
        .collect::<Result<_, _>>()?;
    let mut table = Table::new(vec![
        "temperature_kelvin",
        "free_energy_joule",
        "entropy_joule_per_kelvin",
        "total_entropy_joule_per_kelvin",
        "force_coefficient_joule",
        "quadrature_error",
        "converged",
    ]);
    let all = points.iter().all(|p| p.converged);
    for p in points {
        table.push(vec![
            p.temperature.into(),
            p.free_energy.into(),
            p.entropy.into(),
            p.total_entropy.into(),
            p.force_coefficient.into(),
            p.quadrature_error.into(),
            p.converged.into(),
        ]);
    }
    Ok(Report::from_convergence(table, all))
}

pub fn figure1(cfg: &RunConfig) -> CliResult<Report> {
    let c: Figure1Config = cfg.parameters()?;
    check_grid("parameters.t_grid", &c.t_grid)?;
    let params = Figure1Params {
        m: c.m,
        omega_r_prefactor: c.omega_r_prefactor,
        resistance_exponent: c.resistance_exponent,
    };
    // The low-t values are far below hbar omega_C; rely on the relative tolerance.
    let base = QuadratureSpec {
        abs_tol: 0.0,
        ..QuadratureSpec::default()
    };
    let solver = InteractionSolver::new(QuadratureConfig::spec(c.quadrature, base));
    let points = figure1_curve_with(&params, &solver, &c.t_grid)?;
    let mut table = Table::new(vec![
        "t",
        "free_energy_hbar_omega_c",
        "entropy_kb",
        "total_entropy_kb",
        "force_coefficient_hbar_omega_c",
        "quadrature_error",
        "converged",
    ]);
    let all = points.iter().all(|p| p.converged);
    for p in points {
        table.push(vec![
            p.temperature.into(),
            p.free_energy.into(),
            p.entropy.into(),
            p.total_entropy.into(),
            p.force_coefficient.into(),
            p.quadrature_error.into(),
            p.converged.into(),
        ]);
    }
    Ok(Report::from_convergence(table, all))
}

pub fn lifshitz_scan(cfg: &RunConfig) -> CliResult<Report> {
    let c: LifshitzScanConfig = cfg.parameters()?;
    check_grid("parameters.separation_grid_meter", &c.separation_grid_meter)?;
    check_grid("parameters.temperature_grid_kelvin", &c.temperature_grid_kelvin)?;
    if c.models.is_empty() {
        return Err(CliError::config("parameters.models", "at least one model is required"));
    }
    let models: Vec<DielectricModel> = c
        .models
        .iter()
        .enumerate()
        .map(|(i, m)| m.model(&format!("parameters.models[{i}]")))
        .collect();
    for (i, m) in models.iter().enumerate() {
        m.validate()
            .map_err(|e| CliError::config(format!("parameters.models[{i}]"), e.to_string()))?;
    }
    let cutoff = match MatsubaraCutoff::default() {
        MatsubaraCutoff::Adaptive {
            tail_tolerance,
            max_terms,
        } => MatsubaraCutoff::Adaptive {
            tail_tolerance: c.tail_tolerance.unwrap_or(tail_tolerance),
            max_terms: c.max_terms.unwrap_or(max_terms),
        },
        fixed => fixed,
    };
    let spec = QuadratureConfig::spec(
        c.quadrature,
        LifshitzConfig::new(1.0, 1.0, DielectricModel::Ideal).k_integral_spec,
    );

    let mut points = Vec::new();
    for &model in &models {
        for &a in &c.separation_grid_meter {
            for &t in &c.temperature_grid_kelvin {
                points.push(LifshitzConfig {
                    cutoff,
                    k_integral_spec: spec,
                    ..LifshitzConfig::new(a, t, model)
                });
            }
        }
    }
    for p in &points {
        p.validate().map_err(|e| CliError::config("parameters", e.to_string()))?;
    }
    let ratio = c.ratio_vs_ideal;
    let rows: Vec<_> = points
        .par_iter()
        .map(|p| -> CliResult<_> {
            let f = free_energy_per_area(p)?;
            let pr = pressure(p)?;
            let ideal = if ratio { Some(pressure(&p.with_model(DielectricModel::Ideal))?) } else { None };
            Ok((p, f, pr, ideal))
        })
        .collect::<CliResult<_>>()?;

    let mut columns = vec![
        "separation_meter",
        "temperature_kelvin",
        "model",
        "free_energy_joule_per_m2",
        "pressure_pascal",
        "pressure_truncation_bound_pascal",
        "matsubara_terms",
        "converged",
    ];
    if ratio {
        columns.push("pressure_ratio_vs_ideal");
    }
    let mut table = Table::new(columns);
    let mut all = true;
    for (p, f, pr, ideal) in rows {
        let converged = f.converged && pr.converged && ideal.is_none_or(|i| i.converged);
        all &= converged;
        let mut row: Vec<Cell> = vec![
            p.separation.into(),
            p.temperature.into(),
            p.model.name().into(),
            f.value.into(),
            pr.value.into(),
            pr.truncation_bound.into(),
            pr.terms.into(),
            converged.into(),
        ];
        if let Some(i) = ideal {
            row.push((pr.value / i.value).into());
        }
        table.push(row);
    }
    Ok(Report::from_convergence(table, all))
}

pub fn oracle_check(cfg: &RunConfig, seed: Option<u64>) -> CliResult<Report> {
    let c: OracleConfig = cfg.parameters()?;
    check_grid("parameters.couplings", &c.couplings)?;
    if let Some(i) = c.couplings.iter().position(|m| !(0.0..1.0).contains(m)) {
        return Err(CliError::config(format!("parameters.couplings[{i}]"), "coupling must satisfy 0 <= m < 1"));
    }
    let defaults = SimulationConfig::default();
    let sim = SimulationConfig {
        time_step: c.time_step.unwrap_or(defaults.time_step),
        steps: c.steps.unwrap_or(defaults.steps),
        burn_in: c.burn_in.unwrap_or(defaults.burn_in),
        ensemble: c.ensemble.unwrap_or(defaults.ensemble),
        seed: seed.unwrap_or(defaults.seed),
        integrator: c.integrator.map_or(defaults.integrator, Into::into),
    };
    sim.validate().map_err(|e| CliError::config("parameters", e.to_string()))?;
    let sigma = c.sigma_multiplier.unwrap_or(3.0);
    let h_tol = c.h_tolerance.unwrap_or(1e-6);
    let solver = InteractionSolver::default();

    let mut table = Table::new(vec![
        "m",
        "simulated_cov_kt_per_l",
        "standard_error",
        "equipartition_cov_kt_per_l",
        "quadrature_h",
        "oracle_h",
        "simulation_pass",
        "h_pass",
    ]);
    let mut all_pass = true;
    let mut all_converged = true;
    for &m in &c.couplings {
        // unit L, R and k_B T: covariances come out in units of k_B T / L
        let simulated = simulate_coupled_rl(1.0, m, 1.0, 1.0, &sim)?;
        let exact = equipartition_covariance(1.0, m, 1.0)?;
        let gap = (simulated.cov_i12 - exact.cov_i12).abs();
        let sim_pass = match c.absolute_tolerance {
            Some(tol) => gap <= tol,
            None => gap <= sigma * simulated.standard_error,
        };
        let h = solver.h_factor(&ReducedParams::rl(0.0, m * m)?)?;
        let oracle = oracle_h_zero(m * m)?;
        let h_pass = (h.value - oracle).abs() <= h_tol;
        all_pass &= sim_pass && h_pass;
        all_converged &= h.converged;
        table.push(vec![
            m.into(),
            simulated.cov_i12.into(),
            simulated.standard_error.into(),
            exact.cov_i12.into(),
            h.value.into(),
            oracle.into(),
            sim_pass.into(),
            h_pass.into(),
        ]);
    }
    let status = if !all_pass {
        Status::OracleFailed
    } else if !all_converged {
        Status::NotConverged
    } else {
        Status::Ok
    };
    Ok(Report { table, status })
}

pub fn geometry(cfg: &RunConfig) -> CliResult<Report> {
    let c: GeometryConfig = cfg.parameters()?;
    check_grid("parameters.separation_grid_meter", &c.separation_grid_meter)?;
    let spec = QuadratureSpec::with_tolerances(1e-12, 0.0);
    let mut table = Table::new(vec![
        "separation_meter",
        "self_inductance_henry",
        "mutual_inductance_henry",
        "neumann_mutual_inductance_henry",
        "coupling",
        "coupling_sq_gradient_per_meter",
        "thin_wire_valid",
    ]);
    for (i, &d) in c.separation_grid_meter.iter().enumerate() {
        let g = WireGeometry::new(c.length_meter, c.wire_radius_meter, d)
            .map_err(|e| CliError::config(format!("parameters.separation_grid_meter[{i}]"), e.to_string()))?;
        if !g.thin_wire_valid() {
            log::warn!("separation {d} m: thin-wire approximation is doubtful");
        }
        let neumann = if c.neumann_check { Some(neumann_mutual_inductance(&g, &spec)?) } else { None };
        let profile = coupling_profile(&g)?;
        table.push(vec![
            d.into(),
            self_inductance(&g)?.into(),
            mutual_inductance(&g)?.into(),
            neumann.into(),
            profile.coupling.into(),
            profile.coupling_sq_gradient.into(),
            g.thin_wire_valid().into(),
        ]);
    }
    Ok(Report::from_convergence(table, true))
}
