use bmgate::engine::{run_simulation, AttackStrategy, SimConfig};
use bmgate::fixtures::{plateau_gate, shifted_gaussians};
use bmgate::security::{optimize_threshold_with, rate_patched, threshold_grid, QberSource};
use bmgate::temporal::TemporalResponse;
use bmgate::Execution;

fn h(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        0.0
    } else {
        -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
    }
}

/// Brute-force objective: for each threshold, scan the samples directly.
fn oracle_best(resp: &TemporalResponse, e: f64, grid: &[f64]) -> (f64, f64) {
    let mut best = (f64::NAN, -1.0);
    for &ep in grid {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for i in 0..resp.len() {
            if (1.0 - resp.theta()[i].cos()) / 2.0 < ep {
                lo = lo.min(resp.eta_a()[i]).min(resp.eta_b()[i]);
                hi = hi.max(resp.eta_a()[i]).max(resp.eta_b()[i]);
            }
        }
        if hi <= 0.0 {
            continue;
        }
        let objective = ((ep - e) / ep).max(0.0) * lo / hi;
        if objective > best.1 {
            best = (ep, objective);
        }
    }
    best
}

#[test]
fn optimizer_matches_exhaustive_oracle() {
    let grid = threshold_grid(0.01, 0.5);
    for (curve, e) in [(shifted_gaussians(), 0.0568), (plateau_gate(), 0.0568), (plateau_gate(), 0.2)] {
        let (best, report, rows) =
            optimize_threshold_with(&curve, e, &grid, 0.0, QberSource::Supplied, Execution::default()).unwrap();
        let (ep, objective) = oracle_best(&curve, e, &grid);
        assert_eq!(best, ep);
        assert!((report.effective_blinding - objective).abs() < 1e-15);
        let top = rows.iter().map(|r| r.objective).fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(top, report.effective_blinding);
        let expected_rate = (-h(e) + objective * (1.0 - h(e))).max(0.0);
        assert!((report.rate_patched - expected_rate).abs() < 1e-14);
    }
}

#[test]
fn sequential_and_parallel_scans_agree() {
    let grid = threshold_grid(0.005, 0.5);
    let curve = shifted_gaussians();
    let a = optimize_threshold_with(&curve, 0.03, &grid, 0.02, QberSource::Supplied, Execution::Sequential).unwrap();
    let b = optimize_threshold_with(&curve, 0.03, &grid, 0.02, QberSource::Supplied, Execution::Parallel).unwrap();
    assert_eq!(a, b);
}

#[test]
fn simulated_honest_link_yields_positive_patched_rate() {
    let curve = plateau_gate();
    let cfg = SimConfig { dark_count_prob: 2e-3, transmittance: 0.5, ..SimConfig::new(300_000, 17) };
    let sim = run_simulation(&curve, &AttackStrategy::Honest { t_ns: None }, cfg).unwrap();
    let e = sim.empirical_qber.unwrap();
    assert!(e > 0.0 && e < 0.11, "{e}");
    let source = QberSource::Simulated { seed: sim.seed, n_sifted: sim.n_sifted, std_error: sim.qber_std_error.unwrap() };
    let (_, report, _) =
        optimize_threshold_with(&curve, e, &threshold_grid(0.01, 0.5), 0.0, source, Execution::default()).unwrap();
    assert!(report.rate_patched > 0.0);
    assert_eq!(report.rate_unpatched, 0.0);
    assert_eq!(report.rate_patched, rate_patched(e, report.f, report.eta_restricted).unwrap());
}
