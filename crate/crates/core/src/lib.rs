//! Bit-mapped gating for gated single-photon detectors in BB84.
//!
//! The crate covers:
//!
//! - [`temporal`]: sampled detector efficiency and basis-selector curves,
//!   and the blinding parameter over all or a subset of temporal modes;
//! - [`quantum`]: the per-mode measurement model and the minimum QBER a
//!   single photon can cause;
//! - [`engine`]: a seed-deterministic Monte Carlo of the protocol with
//!   eavesdropping strategies;
//! - [`security`]: key-rate bounds before and after the countermeasure and
//!   the choice of QBER threshold;
//! - [`multiphoton`]: exhaustive verification that multiphoton events cannot
//!   undercut the single-photon QBER floor;
//! - [`monitor`]: detection of blinded detectors with an internal faint source.
//!
//! Parallel work is done with rayon behind the default `parallel` feature.

pub mod engine;
pub mod exec;
pub mod export;
pub mod fixtures;
pub mod monitor;
pub mod multiphoton;
pub mod quantum;
pub mod security;
pub mod temporal;

pub use engine::{run_simulation, AttackStrategy, SimConfig, SimResult};
pub use exec::Execution;
pub use monitor::{run_monitor, MonitorConfig, MonitorReport, Verdict};
pub use quantum::{qber_min, MeasurementSetting, QubitState};
pub use security::{optimize_threshold, SecurityReport};
pub use temporal::{load_response, BitmappedWindow, ModeSubset, TemporalResponse};
