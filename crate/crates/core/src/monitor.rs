//! Self-test of single-photon sensitivity with an internal faint source.
//!
//! On a random fraction of gates Bob fires a calibrated Poissonian test
//! pulse into his detectors instead of using the gate for key. A sensitive
//! detector clicks with probability `1 - exp(-mu eta)`; a blinded one never
//! does. `K` consecutive misses on a detector reject the hypothesis that it
//! is sensitive, with `K` the smallest count whose miss probability is at
//! most `alpha`. Test-gate positions come from Bob's private randomness.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{AttackStrategy, Detector, Engine, EngineError, SimConfig, SimResult, Tally};
use crate::exec::{map_indexed, Execution};
use crate::temporal::TemporalResponse;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MonitorError {
    #[error("{name} = {value} outside {range}")]
    Config {
        name: &'static str,
        value: f64,
        range: &'static str,
    },
    #[error("test pulse cannot certify: click probability is 0")]
    CannotCertify,
    #[error(transparent)]
    Engine(#[from] EngineError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonitorConfig {
    /// Mean photon number of the test pulse at each detector.
    pub mu: f64,
    /// Probability that a gate is a test gate; 0 disables the monitor.
    pub p_test: f64,
    /// False-alarm level per decision window.
    pub alpha: f64,
    /// In-gate efficiency the test is designed for.
    pub eta_expected: f64,
}

impl Default for MonitorConfig {
    fn default() -> Self {
        MonitorConfig {
            mu: 1.0,
            p_test: 0.01,
            alpha: 1e-6,
            eta_expected: 0.1,
        }
    }
}

impl MonitorConfig {
    pub fn validate(&self) -> Result<(), MonitorError> {
        let bad = |name, value, range| Err(MonitorError::Config { name, value, range });
        if !(self.mu > 0.0 && self.mu.is_finite()) {
            return bad("mu", self.mu, "(0, inf)");
        }
        if !(0.0..1.0).contains(&self.p_test) {
            return bad("p_test", self.p_test, "[0, 1)");
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return bad("alpha", self.alpha, "(0, 1]");
        }
        if !(self.eta_expected > 0.0 && self.eta_expected <= 1.0) {
            return bad("eta_expected", self.eta_expected, "(0, 1]");
        }
        Ok(())
    }
}

/// `1 - exp(-mu eta)`.
pub fn click_probability(mu: f64, eta: f64) -> f64 {
    -(-mu * eta).exp_m1()
}

/// Smallest `K` with `(1 - q)^K <= alpha`, `q = click_probability(mu, eta_expected)`.
pub fn required_test_pulses(cfg: &MonitorConfig) -> Result<u64, MonitorError> {
    cfg.validate()?;
    let rate = cfg.mu * cfg.eta_expected;
    if click_probability(cfg.mu, cfg.eta_expected) == 0.0 {
        return Err(MonitorError::CannotCertify);
    }
    if cfg.alpha >= 1.0 {
        return Ok(0);
    }
    // ln(1 - q) = -mu eta exactly.
    let mut k = (cfg.alpha.ln() / -rate).ceil().max(0.0) as u64;
    while k > 0 && -rate * (k - 1) as f64 <= cfg.alpha.ln() {
        k -= 1;
    }
    while -rate * k as f64 > cfg.alpha.ln() {
        k += 1;
    }
    Ok(k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Blind,
    Sensitive,
    /// Too few test pulses to decide.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonitorReport {
    pub seed: u64,
    pub verdict: Verdict,
    pub k_required: u64,
    pub first_alarm_gate: Option<u64>,
    pub alarm_detector: Option<Detector>,
    /// Gates from the start of blinding (or of the run) to the first alarm.
    pub latency_gates: Option<u64>,
    pub n_test_gates: u64,
    /// Test pulses summed over both detectors.
    pub n_test_pulses: u64,
    pub n_test_clicks: u64,
    pub n_alarms: u64,
    /// Completed blocks of `K` test pulses, summed over both detectors.
    pub decision_windows: u64,
    /// Key-gate statistics; test gates never enter these counts.
    pub key: SimResult,
}

impl MonitorReport {
    pub fn alarm_rate(&self) -> Option<f64> {
        (self.decision_windows > 0).then(|| self.n_alarms as f64 / self.decision_windows as f64)
    }
}

/// RNG stream reserved for the monitor, disjoint from engine batch streams.
const MONITOR_STREAM: u64 = u64::MAX;

/// Interleave test gates with key gates. Each detector's test pulses are
/// grouped into consecutive blocks of `K`; a block without a click raises an
/// alarm, so an honest detector alarms with probability at most `alpha` per block.
pub fn run_monitor(
    resp: &TemporalResponse,
    strategy: &AttackStrategy,
    cfg: &MonitorConfig,
    sim: SimConfig,
) -> Result<MonitorReport, MonitorError> {
    cfg.validate()?;
    let k = required_test_pulses(cfg)?;
    let engine = Engine::new(resp, strategy, sim)?;
    let center = resp
        .nearest_sample(resp.window().center())
        .expect("window lies within the support");
    let q = [
        click_probability(cfg.mu, resp.eta_a()[center]),
        click_probability(cfg.mu, resp.eta_b()[center]),
    ];

    let mut rng = ChaCha8Rng::seed_from_u64(sim.seed);
    rng.set_stream(MONITOR_STREAM);
    let mut key = Tally::new(resp.len());
    // Per detector: pulses so far in the current K-block, and whether any clicked.
    let mut in_block = [0u64; 2];
    let mut block_clicked = [false; 2];
    let mut pulses = [0u64; 2];
    let (mut n_test, mut clicks, mut alarms, mut windows) = (0u64, 0u64, 0u64, 0u64);
    let mut first: Option<(u64, Detector)> = None;

    for gate in 0..sim.n_gates {
        if cfg.p_test > 0.0 && rng.random::<f64>() < cfg.p_test {
            n_test += 1;
            let blinded = strategy.blinding_at(gate);
            for (i, d) in [Detector::A, Detector::B].into_iter().enumerate() {
                pulses[i] += 1;
                let sensitive = !blinded.is_some_and(|t| t.blinds(d));
                let click = rng.random::<f64>() < q[i] && sensitive;
                clicks += click as u64;
                in_block[i] += 1;
                block_clicked[i] |= click;
                if in_block[i] >= k {
                    windows += 1;
                    if !block_clicked[i] || k == 0 {
                        alarms += 1;
                        first.get_or_insert((gate, d));
                    }
                    in_block[i] = 0;
                    block_clicked[i] = false;
                }
            }
        } else {
            key.record(&engine.simulate_gate(gate, &mut rng));
        }
    }

    let verdict = if alarms > 0 {
        Verdict::Blind
    } else if n_test == 0 || n_test < k {
        Verdict::Unknown
    } else {
        Verdict::Sensitive
    };
    let origin = match strategy {
        AttackStrategy::Blinding { from_gate, .. } => *from_gate,
        _ => 0,
    };
    Ok(MonitorReport {
        seed: sim.seed,
        verdict,
        k_required: k,
        first_alarm_gate: first.map(|f| f.0),
        alarm_detector: first.map(|f| f.1),
        latency_gates: first.map(|f| f.0.saturating_sub(origin)),
        n_test_gates: n_test,
        n_test_pulses: pulses.iter().sum(),
        n_test_clicks: clicks,
        n_alarms: alarms,
        decision_windows: windows,
        key: key.into_result(resp, sim.seed),
    })
}

/// Independent monitor runs, one per seed.
pub fn run_monitor_seeds(
    resp: &TemporalResponse,
    strategy: &AttackStrategy,
    cfg: &MonitorConfig,
    sim: SimConfig,
    seeds: &[u64],
    exec: Execution,
) -> Result<Vec<MonitorReport>, MonitorError> {
    map_indexed(exec, seeds.len(), |i| {
        run_monitor(resp, strategy, cfg, SimConfig { seed: seeds[i], ..sim })
    })
    .into_iter()
    .collect()
}
