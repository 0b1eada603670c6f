//! JSON run configuration. Physical inputs carry their unit in the field name;
//! fields without a unit suffix are dimensionless or declared reduced.

use std::path::PathBuf;

use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use johnson_casimir::circuit::ResistanceLaw;
use johnson_casimir::langevin::Integrator;
use johnson_casimir::lifshitz::{DielectricModel, GOLD_PLASMA_FREQUENCY, GOLD_RELAXATION};
use johnson_casimir::quadrature::QuadratureSpec;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    AntennaScan,
    Figure1,
    LifshitzScan,
    OracleCheck,
    Geometry,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::AntennaScan => "antenna-scan",
            Command::Figure1 => "figure1",
            Command::LifshitzScan => "lifshitz-scan",
            Command::OracleCheck => "oracle-check",
            Command::Geometry => "geometry",
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Envelope {
    command: Option<String>,
    seed: Option<u64>,
    output: Option<OutputSpec>,
    parameters: Value,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub path: Option<PathBuf>,
    pub format: Option<Format>,
}

/// A parsed configuration document.
#[derive(Debug)]
pub struct RunConfig {
    pub seed: Option<u64>,
    pub output: OutputSpec,
    pub parameters: Value,
    /// SHA-256 of the canonical (sorted-key, compact) JSON form of the document.
    pub hash: String,
}

impl RunConfig {
    pub fn parse(text: &str, command: Command) -> CliResult<Self> {
        let document: Value = serde_json::from_str(text).map_err(|e| CliError::config("<document>", e.to_string()))?;
        let hash = canonical_hash(&document);
        let envelope: Envelope = deserialize_at("", document)?;
        if let Some(named) = &envelope.command {
            if named != command.name() {
                return Err(CliError::config(
                    "command",
                    format!("config is for `{named}` but `{}` was requested", command.name()),
                ));
            }
        }
        Ok(Self {
            seed: envelope.seed,
            output: envelope.output.unwrap_or_default(),
            parameters: envelope.parameters,
            hash,
        })
    }

    pub fn parameters<T: DeserializeOwned>(&self) -> CliResult<T> {
        deserialize_at("parameters", self.parameters.clone())
    }
}

fn canonical_hash(document: &Value) -> String {
    // serde_json maps are ordered by key, so this rendering is canonical
    let canonical = serde_json::to_string(document).expect("a parsed JSON value serializes");
    Sha256::digest(canonical.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn deserialize_at<T: DeserializeOwned>(prefix: &str, value: Value) -> CliResult<T> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let inner = e.path().to_string();
        let path = match (prefix.is_empty(), inner.as_str()) {
            (true, _) => inner.clone(),
            (false, ".") => prefix.to_string(),
            (false, _) => format!("{prefix}.{inner}"),
        };
        CliError::config(path, e.into_inner().to_string())
    })
}

/// Checks that a grid is non-empty, finite and strictly increasing.
pub fn check_grid(path: &str, grid: &[f64]) -> CliResult<()> {
    if grid.is_empty() {
        return Err(CliError::config(path, "grid must not be empty"));
    }
    if let Some(i) = grid.iter().position(|x| !x.is_finite()) {
        return Err(CliError::config(format!("{path}[{i}]"), "grid values must be finite"));
    }
    if let Some(i) = grid.windows(2).position(|w| w[1] <= w[0]) {
        return Err(CliError::config(format!("{path}[{}]", i + 1), "grid must be strictly increasing"));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureConfig {
    pub rel_tol: Option<f64>,
    pub abs_tol: Option<f64>,
    pub max_subdivisions: Option<usize>,
}

impl QuadratureConfig {
    pub fn spec(config: Option<Self>, base: QuadratureSpec) -> QuadratureSpec {
        match config {
            None => base,
            Some(c) => QuadratureSpec {
                rel_tol: c.rel_tol.unwrap_or(base.rel_tol),
                abs_tol: c.abs_tol.unwrap_or(base.abs_tol),
                max_subdivisions: c.max_subdivisions.unwrap_or(base.max_subdivisions),
                ..base
            },
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "lowercase")]
pub enum AntennaScan {
    /// Reduced variables: rho = omega_R / omega_T, m^2, kappa = omega_C / omega_R.
    Reduced(ReducedScan),
    /// SI circuit parameters on a temperature grid.
    Si(SiScan),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReducedScan {
    pub m_sq: f64,
    #[serde(default)]
    pub kappa: f64,
    /// `T R'(T) / R(T)` used for the entropy column.
    #[serde(default)]
    pub resistance_log_slope: f64,
    pub rho_grid: Vec<f64>,
    pub quadrature: Option<QuadratureConfig>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SiScan {
    pub inductance_henry: f64,
    pub coupling: f64,
    pub resistance: ResistanceConfig,
    pub capacitance_farad: Option<f64>,
    pub temperature_grid_kelvin: Vec<f64>,
    pub quadrature: Option<QuadratureConfig>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
pub enum ResistanceConfig {
    ConstantOhm(f64),
    PowerLaw {
        r_ref_ohm: f64,
        t_ref_kelvin: f64,
        exponent: f64,
    },
    /// `[[T_kelvin, R_ohm], ...]`.
    TableKelvinOhm(Vec<(f64, f64)>),
}

impl ResistanceConfig {
    pub fn law(&self) -> ResistanceLaw {
        match self {
            ResistanceConfig::ConstantOhm(r) => ResistanceLaw::Constant(*r),
            ResistanceConfig::PowerLaw {
                r_ref_ohm,
                t_ref_kelvin,
                exponent,
            } => ResistanceLaw::PowerLaw {
                r_ref: *r_ref_ohm,
                t_ref: *t_ref_kelvin,
                exponent: *exponent,
            },
            ResistanceConfig::TableKelvinOhm(rows) => ResistanceLaw::Tabulated(rows.clone()),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Figure1Config {
    /// Reduced temperatures `k_B T / hbar omega_C`.
    pub t_grid: Vec<f64>,
    #[serde(default = "default_figure1_m")]
    pub m: f64,
    #[serde(default = "default_figure1_prefactor")]
    pub omega_r_prefactor: f64,
    #[serde(default = "default_figure1_exponent")]
    pub resistance_exponent: f64,
    pub quadrature: Option<QuadratureConfig>,
}

fn default_figure1_m() -> f64 {
    0.8
}
fn default_figure1_prefactor() -> f64 {
    5.0
}
fn default_figure1_exponent() -> f64 {
    2.0
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Plasma,
    Drude,
    Ideal,
}

/// Dielectric model; frequencies default to the gold preset.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub kind: ModelKind,
    pub plasma_frequency_rad_per_s: Option<f64>,
    pub relaxation_rad_per_s: Option<f64>,
}

impl ModelConfig {
    pub fn model(&self, path: &str) -> DielectricModel {
        let plasma_frequency = self.plasma_frequency_rad_per_s.unwrap_or(GOLD_PLASMA_FREQUENCY);
        match self.kind {
            ModelKind::Ideal => {
                if self.plasma_frequency_rad_per_s.is_some() || self.relaxation_rad_per_s.is_some() {
                    log::warn!("{path}: frequencies are ignored for the ideal model");
                }
                DielectricModel::Ideal
            }
            ModelKind::Plasma => {
                if self.relaxation_rad_per_s.is_some() {
                    log::warn!("{path}.relaxation_rad_per_s is ignored for the plasma model");
                }
                DielectricModel::Plasma { plasma_frequency }
            }
            ModelKind::Drude => DielectricModel::Drude {
                plasma_frequency,
                relaxation: self.relaxation_rad_per_s.unwrap_or(GOLD_RELAXATION),
            },
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LifshitzScanConfig {
    pub models: Vec<ModelConfig>,
    pub separation_grid_meter: Vec<f64>,
    pub temperature_grid_kelvin: Vec<f64>,
    /// Adds the ratio of each pressure to the ideal-reflector pressure.
    #[serde(default)]
    pub ratio_vs_ideal: bool,
    pub tail_tolerance: Option<f64>,
    pub max_terms: Option<usize>,
    pub quadrature: Option<QuadratureConfig>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IntegratorConfig {
    Exact,
    EulerMaruyama,
}

impl From<IntegratorConfig> for Integrator {
    fn from(c: IntegratorConfig) -> Self {
        match c {
            IntegratorConfig::Exact => Integrator::Exact,
            IntegratorConfig::EulerMaruyama => Integrator::EulerMaruyama,
        }
    }
}

/// Simulation settings for the oracle check. Time is in units of `L / R`
/// and covariances in units of `k_B T / L`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleConfig {
    pub couplings: Vec<f64>,
    pub time_step: Option<f64>,
    pub steps: Option<usize>,
    pub burn_in: Option<usize>,
    pub ensemble: Option<usize>,
    pub integrator: Option<IntegratorConfig>,
    /// Pass when `|simulated - exact| <= sigma_multiplier * standard_error`.
    pub sigma_multiplier: Option<f64>,
    /// Replaces the statistical criterion with a fixed absolute tolerance.
    pub absolute_tolerance: Option<f64>,
    /// Tolerance of the quadrature H factor against the equipartition value.
    pub h_tolerance: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryConfig {
    pub length_meter: f64,
    pub wire_radius_meter: f64,
    pub separation_grid_meter: Vec<f64>,
    /// Also evaluate the Neumann double integral.
    #[serde(default)]
    pub neumann_check: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_checks() {
        assert!(check_grid("g", &[1.0, 2.0]).is_ok());
        assert!(check_grid("g", &[]).is_err());
        let err = check_grid("g", &[1.0, 1.0]).unwrap_err().to_string();
        assert!(err.contains("g[1]"), "{err}");
        assert!(check_grid("g", &[f64::NAN]).is_err());
    }

    #[test]
    fn unknown_field_reports_path() {
        let cfg = RunConfig::parse(r#"{"parameters": {"t_grid": [0.1], "mm": 1}}"#, Command::Figure1).unwrap();
        let err = cfg.parameters::<Figure1Config>().unwrap_err().to_string();
        assert!(err.contains("parameters"), "{err}");
        assert!(err.contains("mm"), "{err}");
    }

    #[test]
    fn hash_ignores_key_order_and_whitespace() {
        let a = RunConfig::parse(r#"{"seed": 1, "parameters": {"t_grid": [0.1]}}"#, Command::Figure1).unwrap();
        let b = RunConfig::parse("{\"parameters\":{\"t_grid\":[0.1]},\n \"seed\":1}", Command::Figure1).unwrap();
        assert_eq!(a.hash, b.hash);
        assert_eq!(a.hash.len(), 64);
    }

    #[test]
    fn mismatched_command_is_rejected() {
        let err = RunConfig::parse(r#"{"command": "geometry", "parameters": {}}"#, Command::Figure1).unwrap_err();
        assert!(err.to_string().contains("geometry"));
    }
}
