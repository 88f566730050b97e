//! `bmgate`: simulate, analyze and monitor gated detectors with bit-mapped gating.
//!
//! Exit codes: 0 success, 2 configuration error, 3 I/O error, 4 analysis error.
//! Log verbosity is read from `BMGATE_LOG` (e.g. `BMGATE_LOG=debug`).

mod config;
mod error;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bmgate::engine::{run_simulation, SimResult};
use bmgate::export::{histogram_csv, qber_min_csv, threshold_scan_csv};
use bmgate::monitor::run_monitor;
use bmgate::security::{analyze, optimize_threshold_with, QberSource};
use bmgate::{load_response, Execution, TemporalResponse};
use clap::{Args, Parser, Subcommand};
use log::info;
use serde::Serialize;

use config::RunConfig;
use error::CliError;

#[derive(Parser, Debug)]
#[command(name = "bmgate", version, about = "Bit-mapped gating toolkit for gated single-photon detectors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Monte Carlo of the protocol; writes sim_result.json and detection_histogram.csv.
    Simulate(Common),
    /// Security report at the configured E'; writes security_report.json.
    Analyze(Common),
    /// Threshold optimization; writes security_report.json and threshold_scan.csv.
    Optimize(Common),
    /// Blindness self-test; writes monitor_report.json.
    Monitor(Common),
    /// Figure data; writes qber_min_vs_t.csv and threshold_scan.csv.
    Figures(Common),
}

/// Flags override the config file.
#[derive(Args, Debug)]
struct Common {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    curve: Option<PathBuf>,
    #[arg(long)]
    n_gates: Option<u64>,
    /// Measured QBER E.
    #[arg(long)]
    qber: Option<f64>,
    #[arg(long)]
    e_prime: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
}

impl Common {
    fn resolve(&self) -> Result<(RunConfig, PathBuf), CliError> {
        let mut cfg = RunConfig::load(&self.config)?;
        if let Some(seed) = self.seed {
            cfg.seed = seed;
        }
        if let Some(curve) = &self.curve {
            cfg.curve_file = curve.clone();
        }
        if let Some(n) = self.n_gates {
            cfg.n_gates = n;
        }
        if let Some(e) = self.qber {
            cfg.qber = Some(e);
        }
        if let Some(e) = self.e_prime {
            cfg.e_prime = Some(e);
        }
        if let Some(d) = self.delta {
            cfg.delta = d;
        }
        cfg.validate()?;
        let out = self
            .out
            .clone()
            .or_else(|| cfg.out_dir.clone())
            .unwrap_or_else(|| PathBuf::from("."));
        Ok((cfg, out))
    }
}

fn load_curve(cfg: &RunConfig) -> Result<TemporalResponse, CliError> {
    let text = std::fs::read_to_string(&cfg.curve_file).map_err(|e| CliError::io(&cfg.curve_file, e))?;
    load_response(&text, cfg.window()).map_err(|e| CliError::Config(format!("{}: {e}", cfg.curve_file.display())))
}

fn write(out: &Path, name: &str, contents: &str) -> Result<(), CliError> {
    std::fs::create_dir_all(out).map_err(|e| CliError::io(out, e))?;
    let path = out.join(name);
    std::fs::write(&path, contents).map_err(|e| CliError::io(&path, e))?;
    println!("{}", path.display());
    Ok(())
}

fn write_json<T: Serialize>(out: &Path, name: &str, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("report types serialize");
    text.push('\n');
    write(out, name, &text)
}

fn simulate(cfg: &RunConfig, resp: &TemporalResponse) -> Result<SimResult, CliError> {
    info!("simulating {} gates, seed {}", cfg.n_gates, cfg.seed);
    run_simulation(resp, &cfg.strategy, cfg.sim_config()).map_err(|e| CliError::Config(e.to_string()))
}

/// Supplied QBER, or the empirical one from a simulation run.
fn qber(cfg: &RunConfig, resp: &TemporalResponse) -> Result<(f64, QberSource), CliError> {
    if let Some(e) = cfg.qber {
        return Ok((e, QberSource::Supplied));
    }
    let sim = simulate(cfg, resp)?;
    match (sim.empirical_qber, sim.qber_std_error) {
        (Some(e), Some(se)) => Ok((
            e,
            QberSource::Simulated {
                seed: sim.seed,
                n_sifted: sim.n_sifted,
                std_error: se,
            },
        )),
        _ => Err(CliError::Analysis("simulation produced no sifted detections".into())),
    }
}

fn analysis<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Analysis(e.to_string())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Simulate(c) => {
            let (cfg, out) = c.resolve()?;
            let resp = load_curve(&cfg)?;
            let sim = simulate(&cfg, &resp)?;
            write_json(&out, "sim_result.json", &sim)?;
            write(&out, "detection_histogram.csv", &histogram_csv(&sim))
        }
        Command::Analyze(c) => {
            let (cfg, out) = c.resolve()?;
            let e_prime = cfg
                .e_prime
                .ok_or_else(|| CliError::Config("analyze needs E_prime (config or --e-prime)".into()))?;
            let resp = load_curve(&cfg)?;
            let (e, source) = qber(&cfg, &resp)?;
            let report = analyze(&resp, e, e_prime, cfg.delta, source).map_err(analysis)?;
            write_json(&out, "security_report.json", &report)
        }
        Command::Optimize(c) => {
            let (cfg, out) = c.resolve()?;
            let grid = cfg.e_prime_grid.points()?;
            let resp = load_curve(&cfg)?;
            let (e, source) = qber(&cfg, &resp)?;
            let (_, report, rows) =
                optimize_threshold_with(&resp, e, &grid, cfg.delta, source, Execution::default()).map_err(analysis)?;
            write_json(&out, "security_report.json", &report)?;
            write(&out, "threshold_scan.csv", &threshold_scan_csv(&rows))
        }
        Command::Monitor(c) => {
            let (cfg, out) = c.resolve()?;
            let resp = load_curve(&cfg)?;
            let report = run_monitor(&resp, &cfg.strategy, &cfg.monitor, cfg.sim_config())
                .map_err(|e| CliError::Config(e.to_string()))?;
            info!("verdict {:?} after {} test gates", report.verdict, report.n_test_gates);
            write_json(&out, "monitor_report.json", &report)
        }
        Command::Figures(c) => {
            let (cfg, out) = c.resolve()?;
            let grid = cfg.e_prime_grid.points()?;
            let resp = load_curve(&cfg)?;
            write(&out, "qber_min_vs_t.csv", &qber_min_csv(&resp))?;
            let (e, _) = qber(&cfg, &resp)?;
            let rows = bmgate::security::threshold_scan(&resp, e, &grid, cfg.delta, Execution::default())
                .map_err(analysis)?;
            write(&out, "threshold_scan.csv", &threshold_scan_csv(&rows))
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("BMGATE_LOG", "warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("bmgate: {e}");
            e.exit_code()
        }
    }
}
