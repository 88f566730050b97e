//! Key-rate bounds with and without bit-mapped gating.
//!
//! Without the patch the blinding parameter of the whole gate enters the
//! rate, and the gate edges drive it to zero. With bit-mapped gating the
//! observed QBER `E` certifies that a fraction `f = (E' - E) / E'` of the
//! detections happened in modes whose minimum QBER is below a threshold `E'`;
//! the rate then uses `f * eta'`, where `eta'` is the blinding parameter over
//! those modes only. Mode coupling `delta` discounts `f` to `f (1 - delta)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::{map_indexed, Execution};
use crate::temporal::{blinding_parameter, subset_where_qber_below, ModeError, ModeSubset, TemporalResponse};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("{name} = {value} outside {range}")]
    Domain {
        name: &'static str,
        value: f64,
        range: &'static str,
    },
    #[error("threshold grid is empty")]
    EmptyGrid,
    #[error("no certifiable modes: every threshold selects an empty or all-dark subset")]
    NoCertifiableModes,
    #[error(transparent)]
    Mode(#[from] ModeError),
}

fn check(name: &'static str, value: f64, lo: f64, hi: f64, range: &'static str) -> Result<(), AnalysisError> {
    if (lo..=hi).contains(&value) {
        Ok(())
    } else {
        Err(AnalysisError::Domain { name, value, range })
    }
}

/// Binary Shannon entropy in bits, with `h(0) = h(1) = 0`.
pub fn binary_entropy(p: f64) -> Result<f64, AnalysisError> {
    check("p", p, 0.0, 1.0, "[0, 1]")?;
    if p == 0.0 || p == 1.0 {
        return Ok(0.0);
    }
    Ok(-p * p.log2() - (1.0 - p) * (1.0 - p).log2())
}

fn rate(e: f64, blinding: f64) -> Result<f64, AnalysisError> {
    let h = binary_entropy(e)?;
    Ok((-h + blinding * (1.0 - h)).max(0.0))
}

/// `max(0, -h(E) + eta (1 - h(E)))`.
pub fn rate_unpatched(e: f64, eta: f64) -> Result<f64, AnalysisError> {
    check("E", e, 0.0, 0.5, "[0, 1/2]")?;
    check("eta", eta, 0.0, 1.0, "[0, 1]")?;
    rate(e, eta)
}

/// `max(0, -h(E) + f eta' (1 - h(E)))`.
pub fn rate_patched(e: f64, f: f64, eta_restricted: f64) -> Result<f64, AnalysisError> {
    check("E", e, 0.0, 0.5, "[0, 1/2]")?;
    check("f", f, 0.0, 1.0, "[0, 1]")?;
    check("eta_restricted", eta_restricted, 0.0, 1.0, "[0, 1]")?;
    rate(e, f * eta_restricted)
}

/// Certified in-gate fraction `max(0, (E' - E) / E')`.
pub fn in_gate_fraction(e: f64, e_prime: f64) -> Result<f64, AnalysisError> {
    if !(e_prime > 0.0 && e_prime <= 0.5) {
        return Err(AnalysisError::Domain {
            name: "E_prime",
            value: e_prime,
            range: "(0, 1/2]",
        });
    }
    check("E", e, 0.0, 1.0, "[0, 1]")?;
    Ok(((e_prime - e) / e_prime).max(0.0))
}

/// `f (1 - delta)`.
pub fn apply_mode_coupling(f: f64, delta: f64) -> Result<f64, AnalysisError> {
    check("delta", delta, 0.0, 1.0, "[0, 1]")?;
    Ok(f * (1.0 - delta))
}

/// Where the QBER fed into the analysis came from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum QberSource {
    /// Supplied by the operator (measured, or a decoy single-photon estimate).
    Supplied,
    /// Taken from a simulation; the standard error is reported but not
    /// propagated into the rates.
    Simulated { seed: u64, n_sifted: u64, std_error: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SecurityReport {
    #[serde(rename = "E")]
    pub e: f64,
    #[serde(rename = "E_prime")]
    pub e_prime: f64,
    pub f: f64,
    pub eta_global: f64,
    pub eta_restricted: f64,
    pub delta: f64,
    pub f_adjusted: f64,
    pub effective_blinding: f64,
    pub rate_unpatched: f64,
    pub rate_patched: f64,
    pub e_source: QberSource,
    /// Number of curve samples certified by `E'`.
    pub certified_modes: usize,
}

/// Full analysis at a single threshold.
pub fn analyze(
    resp: &TemporalResponse,
    e: f64,
    e_prime: f64,
    delta: f64,
    e_source: QberSource,
) -> Result<SecurityReport, AnalysisError> {
    let eta_global = blinding_parameter(resp, &ModeSubset::full(resp.len()))?;
    let subset = subset_where_qber_below(resp, e_prime)?;
    let eta_restricted = blinding_parameter(resp, &subset)?;
    report(e, e_prime, delta, eta_global, eta_restricted, subset.count(), e_source)
}

fn report(
    e: f64,
    e_prime: f64,
    delta: f64,
    eta_global: f64,
    eta_restricted: f64,
    certified_modes: usize,
    e_source: QberSource,
) -> Result<SecurityReport, AnalysisError> {
    let f = in_gate_fraction(e, e_prime)?;
    let f_adjusted = apply_mode_coupling(f, delta)?;
    Ok(SecurityReport {
        e,
        e_prime,
        f,
        eta_global,
        eta_restricted,
        delta,
        f_adjusted,
        effective_blinding: f_adjusted * eta_restricted,
        rate_unpatched: rate_unpatched(e, eta_global)?,
        rate_patched: rate_patched(e, f_adjusted, eta_restricted)?,
        e_source,
        certified_modes,
    })
}

/// One row of the threshold scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdRow {
    #[serde(rename = "E_prime")]
    pub e_prime: f64,
    pub f: f64,
    pub eta_restricted: f64,
    pub objective: f64,
}

/// `k * step` for `k = 1..` while `<= stop`; each point is computed from `k`.
pub fn threshold_grid(step: f64, stop: f64) -> Vec<f64> {
    let n = (stop / step + 1e-9).floor() as usize;
    (1..=n).map(|k| ((k as f64 * step) * 1e12).round() / 1e12).collect()
}

/// Default grid: step 0.01 over `(0, 0.5]`.
pub fn default_threshold_grid() -> Vec<f64> {
    threshold_grid(0.01, 0.5)
}

/// Evaluate `f (1 - delta) eta'` at every grid point. Thresholds that
/// certify no usable mode are left out.
pub fn threshold_scan(
    resp: &TemporalResponse,
    e: f64,
    grid: &[f64],
    delta: f64,
    exec: Execution,
) -> Result<Vec<ThresholdRow>, AnalysisError> {
    apply_mode_coupling(1.0, delta)?;
    let rows = map_indexed(exec, grid.len(), |i| -> Result<Option<ThresholdRow>, AnalysisError> {
        let e_prime = grid[i];
        let subset = subset_where_qber_below(resp, e_prime)?;
        let eta_restricted = match blinding_parameter(resp, &subset) {
            Ok(v) => v,
            Err(ModeError::EmptySubset | ModeError::DegenerateEfficiencies) => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let f = in_gate_fraction(e, e_prime)?;
        Ok(Some(ThresholdRow {
            e_prime,
            f,
            eta_restricted,
            objective: apply_mode_coupling(f, delta)? * eta_restricted,
        }))
    });
    rows.into_iter().filter_map(Result::transpose).collect()
}

/// Pick the threshold maximizing `f (1 - delta) eta'`, ties going to the
/// smallest `E'`, and report both rates there.
pub fn optimize_threshold(
    resp: &TemporalResponse,
    e: f64,
    grid: &[f64],
    delta: f64,
    e_source: QberSource,
) -> Result<(f64, SecurityReport), AnalysisError> {
    optimize_threshold_with(resp, e, grid, delta, e_source, Execution::default()).map(|(best, report, _)| (best, report))
}

/// As [`optimize_threshold`], also returning the scan table.
pub fn optimize_threshold_with(
    resp: &TemporalResponse,
    e: f64,
    grid: &[f64],
    delta: f64,
    e_source: QberSource,
    exec: Execution,
) -> Result<(f64, SecurityReport, Vec<ThresholdRow>), AnalysisError> {
    if grid.is_empty() {
        return Err(AnalysisError::EmptyGrid);
    }
    let rows = threshold_scan(resp, e, grid, delta, exec)?;
    let best = rows
        .iter()
        .copied()
        .reduce(|best, r| {
            if r.objective > best.objective || (r.objective == best.objective && r.e_prime < best.e_prime) {
                r
            } else {
                best
            }
        })
        .ok_or(AnalysisError::NoCertifiableModes)?;
    let eta_global = blinding_parameter(resp, &ModeSubset::full(resp.len()))?;
    let certified = subset_where_qber_below(resp, best.e_prime)?.count();
    let report = report(e, best.e_prime, delta, eta_global, best.eta_restricted, certified, e_source)?;
    Ok((best.e_prime, report, rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{plateau_gate, staircase};
    use approx::assert_abs_diff_eq;

    #[test]
    fn entropy_values() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        // mpmath, 40 digits: 0.31460890675107132653
        assert_abs_diff_eq!(binary_entropy(0.0568).unwrap(), 0.314_608_906_751_071_3, epsilon = 1e-14);
        assert!(binary_entropy(-0.1).is_err());
        assert!(binary_entropy(1.1).is_err());
    }

    #[test]
    fn unpatched_rates() {
        assert_eq!(rate_unpatched(0.0, 1.0).unwrap(), 1.0);
        assert_eq!(rate_unpatched(0.0568, 0.01).unwrap(), 0.0);
        // mpmath: 0.30224307717296447959
        assert_abs_diff_eq!(rate_unpatched(0.0568, 0.9).unwrap(), 0.302_243_077_172_964_5, epsilon = 1e-12);
        assert!(rate_unpatched(0.6, 0.5).is_err());
        assert!(rate_unpatched(0.1, 1.5).is_err());
    }

    #[test]
    fn in_gate_fraction_values() {
        assert_abs_diff_eq!(in_gate_fraction(0.0568, 0.45).unwrap(), 0.873_777_777_777_777_8, epsilon = 1e-15);
        assert_eq!(in_gate_fraction(0.0, 0.3).unwrap(), 1.0);
        assert_eq!(in_gate_fraction(0.5, 0.45).unwrap(), 0.0);
        assert!(in_gate_fraction(0.1, 0.0).is_err());
    }

    #[test]
    fn patched_rates() {
        // mpmath: 0.22685005691558232551
        let r = rate_patched(0.0568, 1.0, 0.79).unwrap();
        assert_abs_diff_eq!(r, 0.227, epsilon = 0.002);
        assert_abs_diff_eq!(r, 0.226_850_056_915_582_3, epsilon = 1e-12);
        assert_eq!(rate_patched(0.0, 1.0, 1.0).unwrap(), 1.0);
        // mpmath: 1 - 2 h(0.11) = 0.00016808367094400872
        assert_abs_diff_eq!(rate_patched(0.11, 1.0, 1.0).unwrap(), 0.000_168_083_670_944, epsilon = 1e-12);
    }

    #[test]
    fn mode_coupling() {
        let f = in_gate_fraction(0.0568, 0.45).unwrap();
        assert_eq!(apply_mode_coupling(f, 0.0).unwrap(), f);
        assert_abs_diff_eq!(apply_mode_coupling(f, 0.01).unwrap(), 0.86504, epsilon = 1e-12);
        assert_eq!(apply_mode_coupling(1.0, 1.0).unwrap(), 0.0);
        assert!(apply_mode_coupling(1.0, 1.5).is_err());
    }

    #[test]
    fn grid_points_are_exact() {
        let g = default_threshold_grid();
        assert_eq!(g.len(), 50);
        assert_eq!(g[0], 0.01);
        assert_eq!(g[44], 0.45);
        assert_eq!(g[49], 0.5);
    }

    #[test]
    fn flat_curve_picks_largest_threshold() {
        let r = staircase(0.1, 0.1, 4, &[0.0; 4]).unwrap();
        let grid = [0.1, 0.2, 0.3, 0.4, 0.5];
        let (best, rep) = optimize_threshold(&r, 0.05, &grid, 0.0, QberSource::Supplied).unwrap();
        assert_eq!(best, 0.5);
        assert_eq!(rep.eta_restricted, 1.0);
        assert_abs_diff_eq!(rep.f, 0.9, epsilon = 1e-15);
    }

    #[test]
    fn qber_above_every_threshold_clamps() {
        let r = plateau_gate();
        let (best, rep) = optimize_threshold(&r, 0.5, &[0.1, 0.2, 0.3], 0.0, QberSource::Supplied).unwrap();
        assert_eq!(best, 0.1);
        assert_eq!(rep.f, 0.0);
        assert_eq!(rep.effective_blinding, 0.0);
        assert_eq!(rep.rate_patched, 0.0);
    }

    #[test]
    fn empty_grid_and_no_modes() {
        let r = plateau_gate();
        assert_eq!(
            optimize_threshold(&r, 0.05, &[], 0.0, QberSource::Supplied).unwrap_err(),
            AnalysisError::EmptyGrid
        );
        // all-dark curve: no threshold has usable modes
        let dark = staircase(0.0, 0.0, 1, &[0.0, 1.0]).unwrap();
        assert_eq!(
            optimize_threshold(&dark, 0.05, &[0.1, 0.2], 0.0, QberSource::Supplied).unwrap_err(),
            AnalysisError::NoCertifiableModes
        );
    }

    #[test]
    fn patch_reduces_to_baseline_on_flat_curves() {
        let r = staircase(0.3, 0.2, 3, &[0.0; 3]).unwrap();
        let eta = blinding_parameter(&r, &ModeSubset::full(3)).unwrap();
        for e in [0.0, 0.01, 0.05, 0.1] {
            assert_eq!(rate_patched(e, 1.0, eta).unwrap(), rate_unpatched(e, eta).unwrap());
        }
    }

    #[test]
    fn report_serializes_with_field_names() {
        let rep = analyze(&plateau_gate(), 0.0568, 0.45, 0.0, QberSource::Supplied).unwrap();
        let v: serde_json::Value = serde_json::to_value(&rep).unwrap();
        for k in [
            "E",
            "E_prime",
            "f",
            "eta_global",
            "eta_restricted",
            "delta",
            "f_adjusted",
            "effective_blinding",
            "rate_unpatched",
            "rate_patched",
        ] {
            assert!(v.get(k).is_some(), "missing {k}");
        }
        let back: SecurityReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, rep);
    }
}
