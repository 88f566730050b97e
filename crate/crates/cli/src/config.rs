use std::path::{Path, PathBuf};

use bmgate::engine::{AttackStrategy, SimConfig};
use bmgate::monitor::MonitorConfig;
use bmgate::security::{default_threshold_grid, threshold_grid};
use bmgate::BitmappedWindow;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Threshold grid: explicit values or `step` increments up to `stop`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GridSpec {
    Values(Vec<f64>),
    Range { step: f64, stop: f64 },
}

impl GridSpec {
    pub fn points(&self) -> Result<Vec<f64>, CliError> {
        match self {
            GridSpec::Values(v) => Ok(v.clone()),
            GridSpec::Range { step, stop } => {
                if !(*step > 0.0 && *stop > 0.0) {
                    return Err(CliError::Config(format!("grid step {step} and stop {stop} must be positive")));
                }
                Ok(threshold_grid(*step, *stop))
            }
        }
    }
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec::Values(default_threshold_grid())
    }
}

fn default_n_gates() -> u64 {
    100_000
}

fn default_transmittance() -> f64 {
    1.0
}

fn default_strategy() -> AttackStrategy {
    AttackStrategy::Honest { t_ns: None }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Relative paths resolve against the config file's directory.
    pub curve_file: PathBuf,
    pub bitmapped_window: [f64; 2],
    #[serde(default = "default_strategy")]
    pub strategy: AttackStrategy,
    #[serde(default = "default_n_gates")]
    pub n_gates: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub dark_count_prob: f64,
    #[serde(default = "default_transmittance")]
    pub transmittance: f64,
    /// Measured QBER; when absent it is taken from a simulation run.
    #[serde(default, rename = "E")]
    pub qber: Option<f64>,
    #[serde(default, rename = "E_prime")]
    pub e_prime: Option<f64>,
    #[serde(default, rename = "E_prime_grid")]
    pub e_prime_grid: GridSpec,
    #[serde(default)]
    pub delta: f64,
    #[serde(default)]
    pub monitor: MonitorConfig,
    #[serde(default)]
    pub out_dir: Option<PathBuf>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let mut cfg: RunConfig =
            serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        if cfg.curve_file.is_relative() {
            if let Some(dir) = path.parent() {
                cfg.curve_file = dir.join(&cfg.curve_file);
            }
        }
        Ok(cfg)
    }

    pub fn window(&self) -> BitmappedWindow {
        BitmappedWindow::new(self.bitmapped_window[0], self.bitmapped_window[1])
    }

    pub fn sim_config(&self) -> SimConfig {
        SimConfig {
            n_gates: self.n_gates,
            seed: self.seed,
            dark_count_prob: self.dark_count_prob,
            transmittance: self.transmittance,
        }
    }

    /// Range checks that do not need the curve.
    pub fn validate(&self) -> Result<(), CliError> {
        let prob = |name: &str, v: f64| {
            if (0.0..=1.0).contains(&v) {
                Ok(())
            } else {
                Err(CliError::Config(format!("{name} = {v} outside [0, 1]")))
            }
        };
        prob("dark_count_prob", self.dark_count_prob)?;
        prob("transmittance", self.transmittance)?;
        prob("delta", self.delta)?;
        if let Some(e) = self.qber {
            prob("E", e)?;
        }
        if self.n_gates == 0 {
            return Err(CliError::Config("n_gates must be at least 1".into()));
        }
        self.monitor
            .validate()
            .map_err(|e| CliError::Config(e.to_string()))
    }
}
