//! Gate-by-gate Monte Carlo of BB84 with bit-mapped gating.
//!
//! Each gate draws Alice's bit and basis, then Bob's basis, software mapping
//! and optical mapping, all uniformly and independently. Every photon the
//! eavesdropper sends is measured on its own set of detectors with the
//! branch of the four-measurement model selected by Bob's draws, evaluated
//! at the photon's temporal mode. Clicks are merged as threshold detectors
//! and double clicks get a uniformly random bit.
//!
//! Gates are simulated in fixed-size batches. Batch `k` uses stream `k` of a
//! ChaCha generator keyed by the run seed, and batch tallies are summed, so
//! results are bit-identical for any thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::{map_indexed, Execution};
use crate::quantum::{hadamard, optimal_attack_state, Branch, MeasurementSetting, QubitState};
use crate::temporal::TemporalResponse;

/// Gates per RNG stream.
pub const BATCH_GATES: u64 = 1 << 14;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("arrival time {t_ns} ns outside the curve support [{lo}, {hi}] ns")]
    ArrivalOutsideSupport { t_ns: f64, lo: f64, hi: f64 },
    #[error("n_gates must be at least 1")]
    NoGates,
    #[error("{name} = {value} is not a probability")]
    BadProbability { name: &'static str, value: f64 },
    #[error("multi-photon strategy needs at least one photon")]
    NoPhotons,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    Z,
    X,
}

impl Basis {
    fn draw(rng: &mut impl Rng) -> Self {
        if rng.random::<bool>() {
            Basis::X
        } else {
            Basis::Z
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Detector {
    A,
    B,
}

/// Assignment of detectors to logical bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BitMapping {
    /// `a -> 0, b -> 1`
    AToZero,
    /// `a -> 1, b -> 0`
    AToOne,
}

impl BitMapping {
    fn draw(rng: &mut impl Rng) -> Self {
        if rng.random::<bool>() {
            BitMapping::AToOne
        } else {
            BitMapping::AToZero
        }
    }

    pub fn detector_for(self, bit: u8) -> Detector {
        match (self, bit) {
            (BitMapping::AToZero, 0) | (BitMapping::AToOne, 1) => Detector::A,
            _ => Detector::B,
        }
    }

    pub fn bit_of(self, detector: Detector) -> u8 {
        match (self, detector) {
            (BitMapping::AToZero, Detector::A) | (BitMapping::AToOne, Detector::B) => 0,
            _ => 1,
        }
    }
}

/// Bob's private per-gate choices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BobDraw {
    pub basis: Basis,
    pub software: BitMapping,
    pub optical: BitMapping,
}

impl BobDraw {
    /// Which of the four measurements these draws select.
    pub fn branch(&self) -> Branch {
        match (self.software, self.software == self.optical) {
            (BitMapping::AToZero, true) => Branch::Direct,
            (BitMapping::AToOne, true) => Branch::Swapped,
            (BitMapping::AToZero, false) => Branch::DirectRotated,
            (BitMapping::AToOne, false) => Branch::SwappedRotated,
        }
    }
}

/// How the outcomes of one photon on one detector set combine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JointRule {
    /// A single photon clicks at most one detector.
    Exclusive,
}

/// Born-rule statistics of one photon for one measurement branch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClickProbabilities {
    pub p_bit0: f64,
    pub p_bit1: f64,
    pub p_click_a: f64,
    pub p_click_b: f64,
    pub rule: JointRule,
}

/// Click probabilities for a photon in lab-frame state `rho` arriving at the
/// sample nearest `t_ns`.
pub fn conditional_click_probabilities(
    resp: &TemporalResponse,
    t_ns: f64,
    draw: &BobDraw,
    rho: &QubitState,
) -> Result<ClickProbabilities, EngineError> {
    let sample = sample_at(resp, t_ns)?;
    Ok(branch_probabilities(&resp.setting(sample), draw, rho))
}

fn branch_probabilities(setting: &MeasurementSetting, draw: &BobDraw, rho: &QubitState) -> ClickProbabilities {
    let local = match draw.basis {
        Basis::Z => *rho,
        Basis::X => rho.transformed(&hadamard()),
    };
    let m = draw.branch().measurement(setting);
    let p_bit0 = local.expectation(&m.bit0).max(0.0);
    let p_bit1 = local.expectation(&m.bit1).max(0.0);
    let (p_click_a, p_click_b) = match draw.software {
        BitMapping::AToZero => (p_bit0, p_bit1),
        BitMapping::AToOne => (p_bit1, p_bit0),
    };
    ClickProbabilities {
        p_bit0,
        p_bit1,
        p_click_a,
        p_click_b,
        rule: JointRule::Exclusive,
    }
}

fn sample_at(resp: &TemporalResponse, t_ns: f64) -> Result<usize, EngineError> {
    resp.nearest_sample(t_ns).ok_or_else(|| {
        let (lo, hi) = resp.support();
        EngineError::ArrivalOutsideSupport { t_ns, lo, hi }
    })
}

/// Result of merging all detector sets of a gate into threshold-detector clicks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MergedOutcome {
    Vacuum,
    Bit { bit: u8 },
    Double { resolved: u8 },
}

impl MergedOutcome {
    pub fn bit(&self) -> Option<u8> {
        match *self {
            MergedOutcome::Vacuum => None,
            MergedOutcome::Bit { bit } => Some(bit),
            MergedOutcome::Double { resolved } => Some(resolved),
        }
    }

    pub fn is_double(&self) -> bool {
        matches!(self, MergedOutcome::Double { .. })
    }
}

/// OR the logical-bit clicks of every slot; both bits present is a double
/// click resolved by a fair coin.
pub fn merge_clicks(slots: &[[bool; 2]], rng: &mut impl Rng) -> MergedOutcome {
    let (zero, one) = slots
        .iter()
        .fold((false, false), |(z, o), s| (z || s[0], o || s[1]));
    match (zero, one) {
        (false, false) => MergedOutcome::Vacuum,
        (true, false) => MergedOutcome::Bit { bit: 0 },
        (false, true) => MergedOutcome::Bit { bit: 1 },
        (true, true) => MergedOutcome::Double {
            resolved: rng.random::<bool>() as u8,
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShiftRule {
    /// Bit 0 goes early, bit 1 goes late.
    AliceBit,
    /// Early or late by a fair coin.
    Uniform,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PhotonState {
    /// The state Alice prepared.
    Faithful,
    /// The minimum-error state for Alice's bit at the photon's mode.
    Optimal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhotonSpec {
    pub t_ns: f64,
    pub state: PhotonState,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlindTarget {
    Both,
    A,
    B,
}

impl BlindTarget {
    pub fn blinds(self, d: Detector) -> bool {
        matches!(
            (self, d),
            (BlindTarget::Both, _) | (BlindTarget::A, Detector::A) | (BlindTarget::B, Detector::B)
        )
    }
}

/// Eavesdropper behaviour. Strategies may use Alice's bit and basis but
/// never Bob's draws.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "snake_case")]
pub enum AttackStrategy {
    /// No eavesdropper; Alice's photon arrives at `t_ns` (window centre if unset).
    Honest {
        #[serde(default)]
        t_ns: Option<f64>,
    },
    /// Forward Alice's photon early or late.
    TimeShift { t_early: f64, t_late: f64, rule: ShiftRule },
    /// Forward Alice's state at a time outside the gate.
    AfterGate { t_outside: f64 },
    /// Send the minimum-error single photon at `t_ns`.
    OptimalState { t_ns: f64 },
    /// Several photons, each on its own detector set.
    MultiPhoton { photons: Vec<PhotonSpec> },
    /// Make detectors insensitive to faint light from `from_gate` onward;
    /// Alice's photon still arrives at the window centre.
    Blinding {
        target: BlindTarget,
        #[serde(default)]
        from_gate: u64,
    },
}

impl AttackStrategy {
    pub fn tag(&self) -> StrategyTag {
        match self {
            AttackStrategy::Honest { .. } => StrategyTag::Honest,
            AttackStrategy::TimeShift { .. } => StrategyTag::TimeShift,
            AttackStrategy::AfterGate { .. } => StrategyTag::AfterGate,
            AttackStrategy::OptimalState { .. } => StrategyTag::OptimalState,
            AttackStrategy::MultiPhoton { .. } => StrategyTag::MultiPhoton,
            AttackStrategy::Blinding { .. } => StrategyTag::Blinding,
        }
    }

    /// Blind detectors at gate `gate`, if any.
    pub fn blinding_at(&self, gate: u64) -> Option<BlindTarget> {
        match self {
            AttackStrategy::Blinding { target, from_gate } if gate >= *from_gate => Some(*target),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrategyTag {
    Honest,
    TimeShift,
    AfterGate,
    OptimalState,
    MultiPhoton,
    Blinding,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub n_gates: u64,
    pub seed: u64,
    /// Per-detector dark-count probability per gate.
    #[serde(default)]
    pub dark_count_prob: f64,
    /// Survival probability of Alice's photon; eavesdropper photons are
    /// injected at Bob and bypass the channel.
    #[serde(default = "one")]
    pub transmittance: f64,
}

fn one() -> f64 {
    1.0
}

impl SimConfig {
    pub fn new(n_gates: u64, seed: u64) -> Self {
        SimConfig {
            n_gates,
            seed,
            dark_count_prob: 0.0,
            transmittance: 1.0,
        }
    }

    fn validate(&self) -> Result<(), EngineError> {
        if self.n_gates == 0 {
            return Err(EngineError::NoGates);
        }
        for (name, value) in [
            ("dark_count_prob", self.dark_count_prob),
            ("transmittance", self.transmittance),
        ] {
            if !(0.0..=1.0).contains(&value) {
                return Err(EngineError::BadProbability { name, value });
            }
        }
        Ok(())
    }
}

/// What the eavesdropper did in one gate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EveAction {
    pub tag: StrategyTag,
    pub arrivals_ns: Vec<f64>,
    pub states: Vec<QubitState>,
    pub photon_count: usize,
    pub blinded: Option<BlindTarget>,
}

/// Full record of one simulated gate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateTrialRecord {
    pub gate: u64,
    pub alice_bit: u8,
    pub alice_basis: Basis,
    pub bob: BobDraw,
    pub eve_action: EveAction,
    /// Per photon slot, after efficiency sampling.
    pub clicks_a: Vec<bool>,
    pub clicks_b: Vec<bool>,
    pub dark_a: bool,
    pub dark_b: bool,
    pub merged: MergedOutcome,
    /// Sample index of each photon slot.
    #[serde(skip)]
    pub samples: Vec<usize>,
}

impl GateTrialRecord {
    pub fn sifted(&self) -> bool {
        self.merged.bit().is_some() && self.alice_basis == self.bob.basis
    }

    pub fn is_error(&self) -> bool {
        self.sifted() && self.merged.bit() != Some(self.alice_bit)
    }
}

/// Prepared single photon: sample index and lab-frame state per
/// (Alice basis, Alice bit).
#[derive(Debug, Clone)]
struct PlannedPhoton {
    sample: usize,
    states: [[QubitState; 2]; 2],
}

#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
enum Plan {
    /// Alice's photon through the lossy channel.
    Channel(PlannedPhoton),
    Shift {
        early: PlannedPhoton,
        late: PlannedPhoton,
        rule: ShiftRule,
    },
    Injected(Vec<PlannedPhoton>),
}

fn basis_index(b: Basis) -> usize {
    match b {
        Basis::Z => 0,
        Basis::X => 1,
    }
}

fn faithful_states() -> [[QubitState; 2]; 2] {
    let h = hadamard();
    let z = [QubitState::basis(0), QubitState::basis(1)];
    [z, z.map(|s| s.transformed(&h))]
}

fn optimal_states(setting: &MeasurementSetting) -> [[QubitState; 2]; 2] {
    let h = hadamard();
    let z = [0u8, 1].map(|bit| optimal_attack_state(setting, bit).state);
    [z, z.map(|s| s.transformed(&h))]
}

/// Prepared simulation: validated strategy resolved onto curve samples.
#[derive(Debug, Clone)]
pub struct Engine<'a> {
    resp: &'a TemporalResponse,
    strategy: AttackStrategy,
    cfg: SimConfig,
    plan: Plan,
}

impl<'a> Engine<'a> {
    pub fn new(resp: &'a TemporalResponse, strategy: &AttackStrategy, cfg: SimConfig) -> Result<Self, EngineError> {
        cfg.validate()?;
        let photon = |t_ns: f64, state: PhotonState| -> Result<PlannedPhoton, EngineError> {
            let sample = sample_at(resp, t_ns)?;
            let states = match state {
                PhotonState::Faithful => faithful_states(),
                PhotonState::Optimal => optimal_states(&resp.setting(sample)),
            };
            Ok(PlannedPhoton { sample, states })
        };
        let center = resp.window().center();
        let plan = match strategy {
            AttackStrategy::Honest { t_ns } => Plan::Channel(photon(t_ns.unwrap_or(center), PhotonState::Faithful)?),
            AttackStrategy::Blinding { .. } => Plan::Channel(photon(center, PhotonState::Faithful)?),
            AttackStrategy::TimeShift { t_early, t_late, rule } => Plan::Shift {
                early: photon(*t_early, PhotonState::Faithful)?,
                late: photon(*t_late, PhotonState::Faithful)?,
                rule: *rule,
            },
            AttackStrategy::AfterGate { t_outside } => {
                Plan::Injected(vec![photon(*t_outside, PhotonState::Faithful)?])
            }
            AttackStrategy::OptimalState { t_ns } => Plan::Injected(vec![photon(*t_ns, PhotonState::Optimal)?]),
            AttackStrategy::MultiPhoton { photons } => {
                if photons.is_empty() {
                    return Err(EngineError::NoPhotons);
                }
                Plan::Injected(
                    photons
                        .iter()
                        .map(|p| photon(p.t_ns, p.state))
                        .collect::<Result<_, _>>()?,
                )
            }
        };
        Ok(Engine {
            resp,
            strategy: strategy.clone(),
            cfg,
            plan,
        })
    }

    pub fn config(&self) -> &SimConfig {
        &self.cfg
    }

    pub fn response(&self) -> &TemporalResponse {
        self.resp
    }

    pub fn strategy(&self) -> &AttackStrategy {
        &self.strategy
    }

    /// Simulate gate number `gate`, drawing all randomness from `rng`.
    pub fn simulate_gate(&self, gate: u64, rng: &mut impl Rng) -> GateTrialRecord {
        let alice_bit = rng.random::<bool>() as u8;
        let alice_basis = Basis::draw(rng);
        let bob = BobDraw {
            basis: Basis::draw(rng),
            software: BitMapping::draw(rng),
            optical: BitMapping::draw(rng),
        };
        let ab = basis_index(alice_basis);
        let bit = alice_bit as usize;

        let mut photons: Vec<(usize, QubitState)> = Vec::with_capacity(2);
        match &self.plan {
            Plan::Channel(p) => {
                if rng.random::<f64>() < self.cfg.transmittance {
                    photons.push((p.sample, p.states[ab][bit]));
                }
            }
            Plan::Shift { early, late, rule } => {
                let go_late = match rule {
                    ShiftRule::AliceBit => alice_bit == 1,
                    ShiftRule::Uniform => rng.random::<bool>(),
                };
                let p = if go_late { late } else { early };
                photons.push((p.sample, p.states[ab][bit]));
            }
            Plan::Injected(list) => photons.extend(list.iter().map(|p| (p.sample, p.states[ab][bit]))),
        }

        let blinded = self.strategy.blinding_at(gate);
        let sensitive = |d: Detector| !blinded.is_some_and(|t| t.blinds(d));

        let mut slots: Vec<[bool; 2]> = Vec::with_capacity(photons.len() + 1);
        let mut clicks_a = Vec::with_capacity(photons.len());
        let mut clicks_b = Vec::with_capacity(photons.len());
        for &(sample, state) in &photons {
            let mut setting = self.resp.setting(sample);
            if blinded.is_some() {
                setting = MeasurementSetting::new(
                    if sensitive(Detector::A) { setting.eta_a() } else { 0.0 },
                    if sensitive(Detector::B) { setting.eta_b() } else { 0.0 },
                    setting.theta(),
                )
                .expect("zeroed efficiencies stay in range");
            }
            let p = branch_probabilities(&setting, &bob, &state);
            let u: f64 = rng.random();
            let slot = [u < p.p_bit0, u >= p.p_bit0 && u < p.p_bit0 + p.p_bit1];
            let a = slot[bob.software.bit_of(Detector::A) as usize];
            let b = slot[bob.software.bit_of(Detector::B) as usize];
            clicks_a.push(a);
            clicks_b.push(b);
            slots.push(slot);
        }

        let (mut dark_a, mut dark_b) = (false, false);
        if self.cfg.dark_count_prob > 0.0 {
            dark_a = rng.random::<f64>() < self.cfg.dark_count_prob && sensitive(Detector::A);
            dark_b = rng.random::<f64>() < self.cfg.dark_count_prob && sensitive(Detector::B);
            let mut dark = [false; 2];
            if dark_a {
                dark[bob.software.bit_of(Detector::A) as usize] = true;
            }
            if dark_b {
                dark[bob.software.bit_of(Detector::B) as usize] = true;
            }
            slots.push(dark);
        }

        let merged = merge_clicks(&slots, rng);
        GateTrialRecord {
            gate,
            alice_bit,
            alice_basis,
            bob,
            eve_action: EveAction {
                tag: self.strategy.tag(),
                arrivals_ns: photons.iter().map(|&(s, _)| self.resp.t_ns()[s]).collect(),
                states: photons.iter().map(|&(_, st)| st).collect(),
                photon_count: photons.len(),
                blinded,
            },
            clicks_a,
            clicks_b,
            dark_a,
            dark_b,
            merged,
            samples: photons.iter().map(|&(s, _)| s).collect(),
        }
    }

    fn batch_rng(&self, batch: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.cfg.seed);
        rng.set_stream(batch);
        rng
    }

    fn n_batches(&self) -> u64 {
        self.cfg.n_gates.div_ceil(BATCH_GATES)
    }

    fn for_each_in_batch(&self, batch: u64, mut f: impl FnMut(GateTrialRecord)) {
        let mut rng = self.batch_rng(batch);
        let start = batch * BATCH_GATES;
        let end = (start + BATCH_GATES).min(self.cfg.n_gates);
        for gate in start..end {
            f(self.simulate_gate(gate, &mut rng));
        }
    }

    pub fn run(&self, exec: Execution) -> SimResult {
        let tallies = map_indexed(exec, self.n_batches() as usize, |batch| {
            let mut tally = Tally::new(self.resp.len());
            self.for_each_in_batch(batch as u64, |r| tally.record(&r));
            tally
        });
        let total = tallies.into_iter().fold(Tally::new(self.resp.len()), Tally::merge);
        total.into_result(self.resp, self.cfg.seed)
    }

    /// The first `limit` gate records of the run, identical to what `run` sees.
    pub fn trace(&self, limit: u64) -> Vec<GateTrialRecord> {
        let limit = limit.min(self.cfg.n_gates);
        let mut out = Vec::with_capacity(limit as usize);
        for batch in 0..limit.div_ceil(BATCH_GATES) {
            self.for_each_in_batch(batch, |r| {
                if r.gate < limit {
                    out.push(r)
                }
            });
        }
        out
    }
}

/// Order-independent counters over simulated gates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tally {
    pub n_gates: u64,
    pub n_detected: u64,
    pub n_sifted: u64,
    pub n_errors: u64,
    pub n_double_clicks: u64,
    pub detections: Vec<u64>,
}

impl Tally {
    pub fn new(n_samples: usize) -> Self {
        Tally {
            n_gates: 0,
            n_detected: 0,
            n_sifted: 0,
            n_errors: 0,
            n_double_clicks: 0,
            detections: vec![0; n_samples],
        }
    }

    pub fn record(&mut self, r: &GateTrialRecord) {
        self.n_gates += 1;
        if r.merged.bit().is_some() {
            self.n_detected += 1;
        }
        if r.merged.is_double() {
            self.n_double_clicks += 1;
        }
        if r.sifted() {
            self.n_sifted += 1;
            if r.is_error() {
                self.n_errors += 1;
            }
        }
        for (i, &s) in r.samples.iter().enumerate() {
            if r.clicks_a[i] || r.clicks_b[i] {
                self.detections[s] += 1;
            }
        }
    }

    pub fn merge(mut self, other: Tally) -> Tally {
        self.n_gates += other.n_gates;
        self.n_detected += other.n_detected;
        self.n_sifted += other.n_sifted;
        self.n_errors += other.n_errors;
        self.n_double_clicks += other.n_double_clicks;
        for (a, b) in self.detections.iter_mut().zip(other.detections) {
            *a += b;
        }
        self
    }

    pub fn into_result(self, resp: &TemporalResponse, seed: u64) -> SimResult {
        let (qber, se) = if self.n_sifted > 0 {
            let q = self.n_errors as f64 / self.n_sifted as f64;
            (Some(q), Some((q * (1.0 - q) / self.n_sifted as f64).sqrt()))
        } else {
            (None, None)
        };
        SimResult {
            seed,
            n_gates: self.n_gates,
            n_detected: self.n_detected,
            n_sifted: self.n_sifted,
            n_errors: self.n_errors,
            n_double_clicks: self.n_double_clicks,
            empirical_qber: qber,
            qber_std_error: se,
            t_ns: resp.t_ns().to_vec(),
            detections: self.detections,
        }
    }
}

/// Aggregate statistics of a simulation run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimResult {
    pub seed: u64,
    pub n_gates: u64,
    pub n_detected: u64,
    pub n_sifted: u64,
    pub n_errors: u64,
    pub n_double_clicks: u64,
    /// `n_errors / n_sifted`; absent when nothing was sifted.
    pub empirical_qber: Option<f64>,
    /// Binomial standard error of `empirical_qber`.
    pub qber_std_error: Option<f64>,
    /// Per-sample detection histogram.
    pub t_ns: Vec<f64>,
    pub detections: Vec<u64>,
}

impl SimResult {
    pub fn detection_fraction(&self) -> f64 {
        self.n_detected as f64 / self.n_gates as f64
    }
}

/// Run `n_gates` gates with the default execution mode.
pub fn run_simulation(
    resp: &TemporalResponse,
    strategy: &AttackStrategy,
    cfg: SimConfig,
) -> Result<SimResult, EngineError> {
    run_simulation_with(resp, strategy, cfg, Execution::default())
}

pub fn run_simulation_with(
    resp: &TemporalResponse,
    strategy: &AttackStrategy,
    cfg: SimConfig,
    exec: Execution,
) -> Result<SimResult, EngineError> {
    Ok(Engine::new(resp, strategy, cfg)?.run(exec))
}
