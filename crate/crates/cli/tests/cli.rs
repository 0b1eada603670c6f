use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const BOLTZMANN: f64 = 1.380_649e-23;
const ZETA_3: f64 = 1.202_056_903_159_594_3;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_jncasimir"))
}

fn shipped(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(name)
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl From<Output> for Run {
    fn from(o: Output) -> Self {
        Self {
            code: o.status.code().unwrap_or(-1),
            stdout: String::from_utf8(o.stdout).unwrap(),
            stderr: String::from_utf8(o.stderr).unwrap(),
        }
    }
}

fn run_with(command: &str, config: &Path, extra: &[&str]) -> Run {
    bin().arg(command).arg("--config").arg(config).args(extra).output().unwrap().into()
}

fn run_json(command: &str, config: &str, extra: &[&str]) -> Run {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("config.json");
    std::fs::write(&path, config).unwrap();
    run_with(command, &path, extra)
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let headers = reader.headers().unwrap().iter().map(String::from).collect();
    let rows = reader
        .records()
        .map(|r| r.unwrap().iter().map(String::from).collect())
        .collect();
    (headers, rows)
}

fn column(headers: &[String], rows: &[Vec<String>], name: &str) -> Vec<f64> {
    let i = headers.iter().position(|h| h == name).unwrap();
    rows.iter().map(|r| r[i].parse().unwrap()).collect()
}

#[test]
fn reduced_rl_scan_starts_at_classical_free_energy() {
    let r = run_with("antenna-scan", &shipped("antenna_rl_reduced.json"), &[]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let (headers, rows) = csv_rows(&r.stdout);
    let f = column(&headers, &rows, "free_energy_kt");
    assert!((f[0] - 0.510826).abs() < 1e-6, "{}", f[0]);
    assert!(f.windows(2).all(|w| w[1] <= w[0]));
}

#[test]
fn si_scan_runs() {
    let r = run_with("antenna-scan", &shipped("antenna_rl_si.json"), &["--format", "json"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 6);
    assert!(v["rows"][0]["total_entropy_joule_per_kelvin"].is_null());
}

#[test]
fn figure1_has_one_negative_entropy_interval() {
    let r = run_with("figure1", &shipped("figure1.json"), &[]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let (headers, rows) = csv_rows(&r.stdout);
    let entropy = column(&headers, &rows, "entropy_kb");
    let sign_changes = entropy.windows(2).filter(|w| (w[0] < 0.0) != (w[1] < 0.0)).count();
    assert_eq!(sign_changes, 2);
    assert!(column(&headers, &rows, "total_entropy_kb").iter().all(|s| *s > 0.0));
}

#[test]
fn empty_grid_is_a_usage_error() {
    let r = run_json("figure1", r#"{"parameters": {"t_grid": []}}"#, &[]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("parameters.t_grid"), "{}", r.stderr);
}

#[test]
fn non_increasing_grid_is_rejected() {
    let r = run_json("figure1", r#"{"parameters": {"t_grid": [0.5, 0.2]}}"#, &[]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("t_grid[1]"), "{}", r.stderr);
}

#[test]
fn schema_violations_report_the_field_path() {
    let r = run_json(
        "antenna-scan",
        r#"{"parameters": {"reduced": {"m_sq": 0.5, "rho_grid": [1.0], "mass": 2}}}"#,
        &[],
    );
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("parameters.reduced"), "{}", r.stderr);
    let r = run_json("geometry", r#"{"parameters": {"length_meter": "long"}}"#, &[]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("parameters.length_meter"), "{}", r.stderr);
}

#[test]
fn bad_command_line_exits_with_one() {
    let r = run_with("figure1", &shipped("figure1.json"), &["--format", "xml"]);
    assert_eq!(r.code, 1);
    let r = run_with("figure1", Path::new("/nonexistent/config.json"), &[]);
    assert_eq!(r.code, 1);
    let r: Run = bin().arg("no-such-command").output().unwrap().into();
    assert_eq!(r.code, 1);
}

#[test]
fn drude_to_ideal_ratio_halves_at_large_separation() {
    let r = run_with("lifshitz-scan", &shipped("lifshitz_halving.json"), &[]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let (headers, rows) = csv_rows(&r.stdout);
    let ratio = column(&headers, &rows, "pressure_ratio_vs_ideal");
    let model_col = headers.iter().position(|h| h == "model").unwrap();
    let last_drude = rows.iter().rposition(|r| r[model_col] == "drude").unwrap();
    assert!((ratio[last_drude] - 0.5).abs() < 0.01);
}

#[test]
fn plasma_relaxation_field_warns() {
    let r = run_json(
        "lifshitz-scan",
        r#"{"parameters": {"models": [{"kind": "plasma", "relaxation_rad_per_s": 1e13}],
            "separation_grid_meter": [1e-6], "temperature_grid_kelvin": [300]}}"#,
        &[],
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stderr.contains("ignored"), "{}", r.stderr);
}

#[test]
fn ideal_classical_pressure_matches_closed_form() {
    let a: f64 = 1e-4;
    let t = 300.0;
    let config = format!(
        r#"{{"parameters": {{"models": [{{"kind": "ideal"}}], "separation_grid_meter": [{a}], "temperature_grid_kelvin": [{t}]}}}}"#
    );
    let r = run_json("lifshitz-scan", &config, &["--format", "json"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    let p = v["rows"][0]["pressure_pascal"].as_f64().unwrap();
    let exact = -ZETA_3 * BOLTZMANN * t / (4.0 * PI * a.powi(3));
    assert!((p / exact - 1.0).abs() < 1e-4, "{p} vs {exact}");
}

#[test]
fn oracle_check_passes_and_fails_on_tampered_tolerance() {
    let r = run_with("oracle-check", &shipped("oracle_check.json"), &[]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let (headers, rows) = csv_rows(&r.stdout);
    let cov = column(&headers, &rows, "simulated_cov_kt_per_l");
    let se = column(&headers, &rows, "standard_error");
    assert!(cov[0].abs() < 3.0 * se[0]);

    let tampered = r#"{"parameters": {"couplings": [0.8], "steps": 20000, "burn_in": 500, "ensemble": 8, "absolute_tolerance": 1e-12}}"#;
    let r = run_json("oracle-check", tampered, &["--seed", "3"]);
    assert_eq!(r.code, 3, "{}", r.stderr);
    assert!(r.stdout.contains("false"));
}

#[test]
fn non_convergence_exits_with_two_and_still_writes_rows() {
    let config = r#"{"parameters": {"reduced": {"m_sq": 0.64, "rho_grid": [0.5],
        "quadrature": {"rel_tol": 1e-15, "abs_tol": 0.0, "max_subdivisions": 2}}}}"#;
    let r = run_json("antenna-scan", config, &[]);
    assert_eq!(r.code, 2, "{}", r.stderr);
    assert!(r.stdout.trim_end().ends_with("false"));
}

#[test]
fn identical_config_and_seed_give_identical_bytes() {
    let config = r#"{"parameters": {"couplings": [0.3, 0.8], "steps": 20000, "burn_in": 500, "ensemble": 8}}"#;
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(&cfg, config).unwrap();
    let outputs: Vec<Vec<u8>> = (0..2)
        .map(|i| {
            let out = dir.path().join(format!("out{i}.json"));
            let r = run_with("oracle-check", &cfg, &["--seed", "11", "--format", "json", "--output", out.to_str().unwrap()]);
            assert_eq!(r.code, 0, "{}", r.stderr);
            std::fs::read(out).unwrap()
        })
        .collect();
    assert_eq!(outputs[0], outputs[1]);
    let v: Value = serde_json::from_slice(&outputs[0]).unwrap();
    let meta = &v["metadata"];
    assert_eq!(meta["seed"], 11);
    assert_eq!(meta["command"], "oracle-check");
    assert_eq!(meta["config_sha256"].as_str().unwrap().len(), 64);
    assert!(meta["generator"].as_str().unwrap().contains("ChaCha8"));
    assert!(meta["version"].is_string());

    let other = run_with("oracle-check", &cfg, &["--seed", "12"]);
    let first = run_with("oracle-check", &cfg, &["--seed", "11"]);
    assert_ne!(other.stdout, first.stdout);
}

#[test]
fn geometry_closed_form_matches_neumann() {
    let r = run_with("geometry", &shipped("geometry.json"), &[]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let (headers, rows) = csv_rows(&r.stdout);
    let closed = column(&headers, &rows, "mutual_inductance_henry");
    let neumann = column(&headers, &rows, "neumann_mutual_inductance_henry");
    for (c, n) in closed.iter().zip(&neumann) {
        assert!(((c - n) / n).abs() < 1e-6);
    }
    assert!(column(&headers, &rows, "coupling").iter().all(|m| *m < 1.0));
}

#[test]
fn config_for_another_command_is_rejected() {
    let r = run_with("figure1", &shipped("geometry.json"), &[]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("geometry"));
}
