//! Synthetic response curves.
//!
//! Measured detector curves are not shipped with the toolkit, so these
//! generators build gate-shaped responses with the qualitative features of a
//! real gated receiver: two mutually shifted efficiency curves and a
//! basis-selector angle that is zero inside the bit-mapped gate and ramps to
//! `pi/2` on either side.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::temporal::{BitmappedWindow, ResponseError, TemporalResponse};

/// Shifted-Gaussian detector gate with a linear basis-selector ramp.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GateProfile {
    pub peak: f64,
    /// Gaussian standard deviation in ns.
    pub sigma: f64,
    /// Separation of the two detector centres in ns (detector `a` early).
    pub shift: f64,
    /// Half width of the bit-mapped window in ns, centred on 0.
    pub window_half: f64,
    /// Duration of the `0 -> pi/2` transition on each side, in ns.
    pub ramp: f64,
    pub t_min: f64,
    pub t_max: f64,
    pub step: f64,
}

impl Default for GateProfile {
    fn default() -> Self {
        GateProfile {
            peak: 0.1,
            sigma: 0.2,
            shift: 0.3,
            window_half: 0.1,
            ramp: 0.2,
            t_min: -1.0,
            t_max: 1.0,
            step: 0.01,
        }
    }
}

impl GateProfile {
    /// Sample times `t_min + k * step`; computed from `k` so the grid carries no
    /// accumulated rounding.
    pub fn grid(&self) -> Vec<f64> {
        let n = ((self.t_max - self.t_min) / self.step).round() as usize;
        (0..=n).map(|k| self.t_min + k as f64 * self.step).map(snap).collect()
    }

    pub fn theta_at(&self, t: f64) -> f64 {
        ramp_theta(t, self.window_half, self.ramp)
    }

    pub fn build(&self) -> Result<TemporalResponse, ResponseError> {
        let t = self.grid();
        let gauss = |c: f64, x: f64| self.peak * (-(x - c).powi(2) / (2.0 * self.sigma * self.sigma)).exp();
        let eta_a = t.iter().map(|&x| gauss(-0.5 * self.shift, x)).collect();
        let eta_b = t.iter().map(|&x| gauss(0.5 * self.shift, x)).collect();
        let theta = t.iter().map(|&x| self.theta_at(x)).collect();
        TemporalResponse::new(t, eta_a, eta_b, theta, self.window())
    }

    pub fn window(&self) -> BitmappedWindow {
        BitmappedWindow::new(-self.window_half, self.window_half)
    }
}

/// Round to 12 decimals so grid points like `-0.1` compare exactly against
/// window edges written the same way.
fn snap(x: f64) -> f64 {
    (x * 1e12).round() / 1e12
}

fn ramp_theta(t: f64, window_half: f64, ramp: f64) -> f64 {
    let d = t.abs() - window_half;
    if d <= 0.0 {
        0.0
    } else if d >= ramp {
        FRAC_PI_2
    } else {
        FRAC_PI_2 * d / ramp
    }
}

/// Two shifted Gaussians (peak 0.1, sigma 0.2 ns, 0.3 ns apart) on `[-1, 1]` ns
/// at 10 ps with a 0.2 ns ramp either side of a `[-0.1, 0.1]` ns window.
pub fn shifted_gaussians() -> TemporalResponse {
    GateProfile::default().build().expect("default profile is valid")
}

/// Curve whose certified modes (`|t| <= 0.3` ns) have efficiencies 0.10 and
/// 0.09, giving a restricted blinding parameter of 0.9 for any threshold up
/// to the end of the ramp, while the gate edges push the global parameter
/// well below 0.01.
pub fn plateau_gate() -> TemporalResponse {
    let profile = GateProfile::default();
    let t = profile.grid();
    let plateau = 0.3;
    let tail = |peak: f64, width: f64, x: f64| {
        let d = (x.abs() - plateau).max(0.0);
        peak * (-(d / width).powi(2)).exp()
    };
    let eta_a = t.iter().map(|&x| tail(0.10, 0.15, x)).collect();
    let eta_b = t.iter().map(|&x| tail(0.09, 0.10, x)).collect();
    let theta = t.iter().map(|&x| profile.theta_at(x)).collect();
    TemporalResponse::new(t, eta_a, eta_b, theta, profile.window()).expect("plateau fixture is valid")
}

/// Constant efficiencies and an arbitrary per-sample angle on a unit-spaced
/// grid; the first `window_len` samples form the bit-mapped window and must
/// carry `theta = 0`.
pub fn staircase(eta_a: f64, eta_b: f64, window_len: usize, thetas: &[f64]) -> Result<TemporalResponse, ResponseError> {
    let n = thetas.len();
    let t: Vec<f64> = (0..n).map(|i| i as f64).collect();
    let window = BitmappedWindow::new(0.0, window_len.saturating_sub(1) as f64);
    TemporalResponse::new(t, vec![eta_a; n], vec![eta_b; n], thetas.to_vec(), window)
}

/// `theta = 0` everywhere: a receiver without bit-mapped gating, where the
/// optical mapping always follows the software mapping.
pub fn unpatched(resp: &TemporalResponse) -> TemporalResponse {
    TemporalResponse::new(
        resp.t_ns().to_vec(),
        resp.eta_a().to_vec(),
        resp.eta_b().to_vec(),
        vec![0.0; resp.len()],
        resp.window(),
    )
    .expect("zero angle satisfies the window constraint")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::temporal::{blinding_parameter, subset_where_qber_below, ModeSubset};

    #[test]
    fn grid_is_exact() {
        let t = GateProfile::default().grid();
        assert_eq!(t.len(), 201);
        assert_eq!(t[0], -1.0);
        assert_eq!(t[90], -0.1);
        assert_eq!(t[100], 0.0);
        assert_eq!(t[200], 1.0);
    }

    #[test]
    fn plateau_gives_restricted_ratio_point_nine() {
        let r = plateau_gate();
        let eta = blinding_parameter(&r, &ModeSubset::full(r.len())).unwrap();
        assert!(eta < 0.01);
        let s = subset_where_qber_below(&r, 0.45).unwrap();
        let eta_r = blinding_parameter(&r, &s).unwrap();
        assert!((eta_r - 0.9).abs() < 1e-12, "{eta_r}");
    }
}
