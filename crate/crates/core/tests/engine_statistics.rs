use std::f64::consts::{FRAC_PI_2, FRAC_PI_3};

use bmgate::engine::{run_simulation, run_simulation_with, AttackStrategy, Engine, ShiftRule, SimConfig};
use bmgate::fixtures::{plateau_gate, staircase};
use bmgate::quantum::qber_min;
use bmgate::Execution;

fn sigma(q: f64, n: u64) -> f64 {
    (q * (1.0 - q) / n as f64).sqrt()
}

#[test]
fn ideal_honest_channel_is_error_free() {
    let curve = staircase(1.0, 1.0, 1, &[0.0, 0.0]).unwrap();
    let r = run_simulation(&curve, &AttackStrategy::Honest { t_ns: None }, SimConfig::new(100_000, 1)).unwrap();
    assert_eq!(r.n_detected, r.n_gates);
    assert_eq!(r.n_errors, 0);
    assert_eq!(r.empirical_qber, Some(0.0));
    let frac = r.n_sifted as f64 / r.n_detected as f64;
    assert!((frac - 0.5).abs() < 5.0 * sigma(0.5, r.n_detected), "{frac}");
}

#[test]
fn detection_rate_follows_average_efficiency() {
    let curve = plateau_gate();
    let i = curve.nearest_sample(0.0).unwrap();
    let p_det = (curve.eta_a()[i] + curve.eta_b()[i]) / 2.0;
    for (transmittance, seed) in [(1.0, 3), (0.4, 4)] {
        let cfg = SimConfig { transmittance, ..SimConfig::new(400_000, seed) };
        let r = run_simulation(&curve, &AttackStrategy::Honest { t_ns: None }, cfg).unwrap();
        let p = p_det * transmittance;
        let z = (r.detection_fraction() - p) / sigma(p, r.n_gates);
        assert!(z.abs() < 5.0, "transmittance {transmittance}: z = {z}");
        assert_eq!(r.detections[i], r.n_detected);
    }
}

#[test]
fn dark_counts_raise_errors_on_honest_runs() {
    let curve = staircase(0.2, 0.2, 1, &[0.0, 0.0]).unwrap();
    let cfg = SimConfig { dark_count_prob: 0.05, ..SimConfig::new(200_000, 9) };
    let r = run_simulation(&curve, &AttackStrategy::Honest { t_ns: None }, cfg).unwrap();
    let q = r.empirical_qber.unwrap();
    assert!(q > 0.02 && q < 0.2, "{q}");
    assert!(r.n_double_clicks > 0);
}

#[test]
fn time_shift_keyed_on_alice_bit_reaches_mixture_floor() {
    // early at theta = 0 (no error), late at pi/2 (random bit): expected QBER 1/4
    let curve = staircase(0.5, 0.5, 1, &[0.0, FRAC_PI_2]).unwrap();
    let s = AttackStrategy::TimeShift { t_early: 0.0, t_late: 1.0, rule: ShiftRule::AliceBit };
    let r = run_simulation(&curve, &s, SimConfig::new(400_000, 11)).unwrap();
    let q = r.empirical_qber.unwrap();
    assert!((q - 0.25).abs() < 5.0 * sigma(0.25, r.n_sifted), "{q}");
}

#[test]
fn optimal_state_hits_floor_at_two_angles() {
    let curve = staircase(0.6, 0.3, 1, &[0.0, FRAC_PI_3, FRAC_PI_2]).unwrap();
    for (t, theta) in [(1.0, FRAC_PI_3), (2.0, FRAC_PI_2)] {
        let r = run_simulation(&curve, &AttackStrategy::OptimalState { t_ns: t }, SimConfig::new(300_000, 21)).unwrap();
        let target = qber_min(theta);
        let q = r.empirical_qber.unwrap();
        assert!((q - target).abs() < 5.0 * sigma(target, r.n_sifted), "theta {theta}: {q} vs {target}");
    }
}

#[test]
fn same_seed_same_result_any_execution() {
    let curve = plateau_gate();
    let s = AttackStrategy::AfterGate { t_outside: 0.45 };
    let cfg = SimConfig { dark_count_prob: 0.01, ..SimConfig::new(70_000, 5) };
    let a = run_simulation_with(&curve, &s, cfg, Execution::Parallel).unwrap();
    let b = run_simulation_with(&curve, &s, cfg, Execution::Sequential).unwrap();
    assert_eq!(a, b);
    let c = run_simulation_with(&curve, &s, SimConfig { seed: 6, ..cfg }, Execution::Parallel).unwrap();
    assert_ne!(a, c);
}

#[cfg(feature = "parallel")]
#[test]
fn thread_count_does_not_change_results() {
    let curve = plateau_gate();
    let s = AttackStrategy::Honest { t_ns: Some(0.2) };
    let cfg = SimConfig::new(100_000, 12);
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| run_simulation_with(&curve, &s, cfg, Execution::Parallel).unwrap())
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn trace_agrees_with_aggregate_counts() {
    let curve = staircase(0.4, 0.3, 1, &[0.0, FRAC_PI_3]).unwrap();
    let s = AttackStrategy::TimeShift { t_early: 0.0, t_late: 1.0, rule: ShiftRule::Uniform };
    let engine = Engine::new(&curve, &s, SimConfig::new(40_000, 8)).unwrap();
    let records = engine.trace(40_000);
    let result = engine.run(Execution::default());
    let detected = records.iter().filter(|r| r.merged.bit().is_some()).count() as u64;
    let sifted = records.iter().filter(|r| r.sifted()).count() as u64;
    let errors = records.iter().filter(|r| r.is_error()).count() as u64;
    assert_eq!((detected, sifted, errors), (result.n_detected, result.n_sifted, result.n_errors));
}
