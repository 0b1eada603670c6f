//! Batch front-end: reads a JSON config, runs one scan and writes a CSV or
//! JSON table.
//!
//! Exit codes: 0 success, 1 usage or config error, 2 numerical
//! non-convergence (the table is still written), 3 oracle-check failure.

mod commands;
mod config;
mod error;
mod output;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{Report, Status};
use config::{Command, Format, RunConfig};
use error::{CliError, CliResult};
use johnson_casimir::langevin::GENERATOR_ID;
use output::{write_table, Metadata};

#[derive(Debug, Parser)]
#[command(name = "jncasimir", version, about = "Thermal antenna interaction and Lifshitz pressure scans")]
struct Cli {
    #[command(subcommand)]
    command: CommandArgs,
}

#[derive(Debug, Subcommand)]
enum CommandArgs {
    /// Free energy, entropy and force coefficient of two coupled RL/RLC antennas.
    AntennaScan(Common),
    /// RLC interaction curve versus reduced temperature.
    Figure1(Common),
    /// Lifshitz free energy and pressure for Drude, plasma or ideal plates.
    LifshitzScan(Common),
    /// Langevin simulation against the equipartition covariance.
    OracleCheck(Common),
    /// Wire inductances and coupling versus separation.
    Geometry(Common),
}

#[derive(Debug, Args)]
struct Common {
    /// JSON configuration file.
    #[arg(long)]
    config: PathBuf,
    /// Output file; standard output when absent.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Seed for the stochastic oracle; overrides the config.
    #[arg(long)]
    seed: Option<u64>,
}

impl CommandArgs {
    fn split(&self) -> (Command, &Common) {
        match self {
            CommandArgs::AntennaScan(c) => (Command::AntennaScan, c),
            CommandArgs::Figure1(c) => (Command::Figure1, c),
            CommandArgs::LifshitzScan(c) => (Command::LifshitzScan, c),
            CommandArgs::OracleCheck(c) => (Command::OracleCheck, c),
            CommandArgs::Geometry(c) => (Command::Geometry, c),
        }
    }
}

fn run(cli: &Cli) -> CliResult<Status> {
    let (command, args) = cli.command.split();
    let text = fs::read_to_string(&args.config).map_err(|source| CliError::Io {
        context: format!("cannot read {}", args.config.display()),
        source,
    })?;
    let cfg = RunConfig::parse(&text, command)?;
    let seed = args.seed.or(cfg.seed);
    let report: Report = match command {
        Command::AntennaScan => commands::antenna_scan(&cfg)?,
        Command::Figure1 => commands::figure1(&cfg)?,
        Command::LifshitzScan => commands::lifshitz_scan(&cfg)?,
        Command::OracleCheck => commands::oracle_check(&cfg, seed)?,
        Command::Geometry => commands::geometry(&cfg)?,
    };
    let meta = Metadata {
        command: command.name(),
        config_sha256: cfg.hash.clone(),
        seed,
        generator: GENERATOR_ID,
    };
    let format = args.format.or(cfg.output.format).unwrap_or(Format::Csv);
    let mut buffer = Vec::new();
    write_table(&mut buffer, &report.table, &meta, format).expect("writing to memory");
    match args.output.as_ref().or(cfg.output.path.as_ref()) {
        Some(path) => fs::write(path, &buffer).map_err(|source| CliError::Io {
            context: format!("cannot write {}", path.display()),
            source,
        })?,
        None => std::io::stdout().write_all(&buffer).map_err(|source| CliError::Io {
            context: "cannot write to standard output".to_string(),
            source,
        })?,
    }
    Ok(report.status)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::NotConverged) => {
            eprintln!("error: at least one row did not converge");
            ExitCode::from(2)
        }
        Ok(Status::OracleFailed) => {
            eprintln!("error: oracle check failed");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
