//! Single-photon measurement statistics for a receiver with bit-mapped gating.
//!
//! At each temporal mode Bob performs one of four measurements, selected by
//! his software bit-mapping and whether the (random) optical bit-mapping
//! agrees with it. Averaging the four with equal weight gives a three-outcome
//! POVM `{E0, E1, Ev}` whose vacuum element is proportional to the identity,
//! so the detection probability cannot be steered by the photon state. The
//! spectrum of `E0`/`E1` then bounds the error rate any single photon can
//! produce at that mode.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Hermiticity, positivity and trace tolerance for states and operators.
pub const OPERATOR_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuantumError {
    #[error("efficiency {name} = {value} outside [0, 1]")]
    EfficiencyOutOfRange { name: &'static str, value: f64 },
    #[error("basis angle {0} outside [0, pi/2]")]
    AngleOutOfRange(f64),
    #[error("density matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),
    #[error("density matrix has negative eigenvalue {0:e}")]
    NotPositive(f64),
    #[error("density matrix trace {0} != 1")]
    BadTrace(f64),
    #[error("zero state vector")]
    ZeroVector,
}

/// Dense 2x2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub const ZERO: Mat2 = Mat2([[c(0.0), c(0.0)], [c(0.0), c(0.0)]]);
    pub const IDENTITY: Mat2 = Mat2([[c(1.0), c(0.0)], [c(0.0), c(1.0)]]);

    pub fn real(m: [[f64; 2]; 2]) -> Self {
        Mat2([[c(m[0][0]), c(m[0][1])], [c(m[1][0]), c(m[1][1])]])
    }

    /// `|v><v|` for a (not necessarily normalized) vector.
    pub fn outer(v: [Complex64; 2]) -> Self {
        let mut m = Mat2::ZERO;
        for (i, row) in m.0.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = v[i] * v[j].conj();
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.0[i][j]
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn dagger(&self) -> Self {
        let m = &self.0;
        Mat2([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    pub fn scale(&self, k: f64) -> Self {
        let mut out = *self;
        out.0.iter_mut().flatten().for_each(|x| *x *= k);
        out
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn hermitian_deviation(&self) -> f64 {
        self.max_abs_diff(&self.dagger())
    }

    /// `(M + M^dagger) / 2`.
    pub fn symmetrized(&self) -> Self {
        (*self + self.dagger()).scale(0.5)
    }

    /// `Tr(self * other)`, the Born-rule expectation when one side is a state.
    pub fn trace_product(&self, other: &Mat2) -> f64 {
        (*self * *other).trace().re
    }

    /// Conjugation `U M U^dagger`.
    pub fn conjugated_by(&self, u: &Mat2) -> Self {
        *u * *self * u.dagger()
    }

    /// Eigen-decomposition of the Hermitian part, closed form.
    pub fn hermitian_eigen(&self) -> HermitianEigen {
        let h = self.symmetrized();
        let a = h.0[0][0].re;
        let d = h.0[1][1].re;
        let b = h.0[0][1];
        let mean = 0.5 * (a + d);
        let half_gap = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
        let values = [mean - half_gap, mean + half_gap];
        let vectors = values.map(|lambda| eigenvector(a, b, d, lambda, values[0] == values[1]));
        HermitianEigen { values, vectors }
    }
}

const fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn eigenvector(a: f64, b: Complex64, d: f64, lambda: f64, degenerate: bool) -> [Complex64; 2] {
    // Rows of (H - lambda I) are orthogonal to the eigenvector; use the better-conditioned one.
    let from_row0 = [b, c(lambda - a)];
    let from_row1 = [c(lambda - d), b.conj()];
    let n0 = from_row0[0].norm_sqr() + from_row0[1].norm_sqr();
    let n1 = from_row1[0].norm_sqr() + from_row1[1].norm_sqr();
    let (v, n) = if n0 >= n1 { (from_row0, n0) } else { (from_row1, n1) };
    if degenerate || n < 1e-300 {
        // Scalar matrix or already diagonal; pick the basis vector matching lambda.
        return if (lambda - a).abs() <= (lambda - d).abs() {
            [c(1.0), c(0.0)]
        } else {
            [c(0.0), c(1.0)]
        };
    }
    normalize_phase([v[0] / n.sqrt(), v[1] / n.sqrt()])
}

/// Fix the global phase so the first non-negligible component is real and positive.
fn normalize_phase(v: [Complex64; 2]) -> [Complex64; 2] {
    let pivot = if v[0].norm() > 1e-12 { v[0] } else { v[1] };
    let phase = pivot.conj() / pivot.norm();
    [v[0] * phase, v[1] * phase]
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        let mut out = self;
        for (x, y) in out.0.iter_mut().flatten().zip(rhs.0.iter().flatten()) {
            *x += y;
        }
        out
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        self + rhs.scale(-1.0)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let (l, r) = (&self.0, &rhs.0);
        Mat2(std::array::from_fn(|i| std::array::from_fn(|j| l[i][0] * r[0][j] + l[i][1] * r[1][j])))
    }
}

/// Eigenvalues in ascending order with matching unit eigenvectors.
#[derive(Debug, Clone, Copy)]
pub struct HermitianEigen {
    pub values: [f64; 2],
    pub vectors: [[Complex64; 2]; 2],
}

/// Hadamard transform; maps the Z basis onto the X basis.
pub fn hadamard() -> Mat2 {
    Mat2::real([[1.0, 1.0], [1.0, -1.0]]).scale(std::f64::consts::FRAC_1_SQRT_2)
}

/// `|theta> = cos(theta)|0> + sin(theta)|1>`.
pub fn ket_theta(theta: f64) -> [Complex64; 2] {
    [c(theta.cos()), c(theta.sin())]
}

/// `|theta_perp> = sin(theta)|0> - cos(theta)|1>`.
pub fn ket_theta_perp(theta: f64) -> [Complex64; 2] {
    [c(theta.sin()), c(-theta.cos())]
}

/// Density matrix of a single photon's encoded qubit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Mat2", into = "Mat2")]
pub struct QubitState(Mat2);

impl QubitState {
    pub fn new(rho: Mat2) -> Result<Self, QuantumError> {
        let dev = rho.hermitian_deviation();
        if dev > OPERATOR_TOL {
            return Err(QuantumError::NotHermitian(dev));
        }
        let tr = rho.trace();
        if (tr.re - 1.0).abs() > OPERATOR_TOL || tr.im.abs() > OPERATOR_TOL {
            return Err(QuantumError::BadTrace(tr.re));
        }
        let low = rho.hermitian_eigen().values[0];
        if low < -OPERATOR_TOL {
            return Err(QuantumError::NotPositive(low));
        }
        Ok(QubitState(rho))
    }

    pub fn pure(v: [Complex64; 2]) -> Result<Self, QuantumError> {
        let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
        if n == 0.0 {
            return Err(QuantumError::ZeroVector);
        }
        let u = [v[0] / n, v[1] / n];
        Ok(QubitState(Mat2::outer(u).symmetrized()))
    }

    /// Computational basis state `|bit>`.
    pub fn basis(bit: u8) -> Self {
        if bit == 0 {
            QubitState(Mat2::real([[1.0, 0.0], [0.0, 0.0]]))
        } else {
            QubitState(Mat2::real([[0.0, 0.0], [0.0, 1.0]]))
        }
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    /// The state after the unitary `u`: `u rho u^dagger`.
    pub fn transformed(&self, u: &Mat2) -> Self {
        QubitState(self.0.conjugated_by(u).symmetrized())
    }

    pub fn expectation(&self, op: &Mat2) -> f64 {
        self.0.trace_product(op)
    }
}

impl TryFrom<Mat2> for QubitState {
    type Error = QuantumError;
    fn try_from(m: Mat2) -> Result<Self, Self::Error> {
        QubitState::new(m)
    }
}

impl From<QubitState> for Mat2 {
    fn from(s: QubitState) -> Mat2 {
        s.0
    }
}

/// Detector efficiencies and basis-selector angle at one temporal mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasurementSetting {
    eta_a: f64,
    eta_b: f64,
    theta: f64,
}

impl MeasurementSetting {
    pub fn new(eta_a: f64, eta_b: f64, theta: f64) -> Result<Self, QuantumError> {
        for (name, value) in [("eta_a", eta_a), ("eta_b", eta_b)] {
            if !(0.0..=1.0).contains(&value) {
                return Err(QuantumError::EfficiencyOutOfRange { name, value });
            }
        }
        if !(0.0..=FRAC_PI_2).contains(&theta) {
            return Err(QuantumError::AngleOutOfRange(theta));
        }
        Ok(MeasurementSetting { eta_a, eta_b, theta })
    }

    pub fn eta_a(&self) -> f64 {
        self.eta_a
    }

    pub fn eta_b(&self) -> f64 {
        self.eta_b
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `(eta_a + eta_b) / 2`.
    pub fn p_det(&self) -> f64 {
        0.5 * (self.eta_a + self.eta_b)
    }
}

/// Bit-0, bit-1 and vacuum elements of one measurement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutcomeTriple {
    pub bit0: Mat2,
    pub bit1: Mat2,
    pub vacuum: Mat2,
}

impl OutcomeTriple {
    fn from_bits(bit0: Mat2, bit1: Mat2) -> Self {
        OutcomeTriple {
            bit0,
            bit1,
            vacuum: Mat2::IDENTITY - bit0 - bit1,
        }
    }
}

/// The averaged three-outcome measurement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Povm {
    pub e0: Mat2,
    pub e1: Mat2,
    pub ev: Mat2,
}

impl Povm {
    /// Largest deviation of `e0 + e1 + ev` from the identity.
    pub fn completeness_error(&self) -> f64 {
        (self.e0 + self.e1 + self.ev).max_abs_diff(&Mat2::IDENTITY)
    }

    pub fn element(&self, bit: u8) -> &Mat2 {
        if bit == 0 {
            &self.e0
        } else {
            &self.e1
        }
    }
}

/// Which of the four measurements Bob performs at a mode.
///
/// Software mapping `a -> 0` with matching optical mapping is `M`; the
/// swapped software mapping with matching optics is `M'`; mismatched optical
/// draws give the angle-dependent `M''` and `M'''`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Direct,
    Swapped,
    DirectRotated,
    SwappedRotated,
}

impl Branch {
    pub const ALL: [Branch; 4] = [
        Branch::Direct,
        Branch::Swapped,
        Branch::DirectRotated,
        Branch::SwappedRotated,
    ];

    /// Detector efficiencies assigned to logical bits (bit 0, bit 1).
    fn bit_efficiencies(self, s: &MeasurementSetting) -> (f64, f64) {
        match self {
            Branch::Direct | Branch::DirectRotated => (s.eta_a, s.eta_b),
            Branch::Swapped | Branch::SwappedRotated => (s.eta_b, s.eta_a),
        }
    }

    pub fn is_rotated(self) -> bool {
        matches!(self, Branch::DirectRotated | Branch::SwappedRotated)
    }

    pub fn measurement(self, s: &MeasurementSetting) -> OutcomeTriple {
        let (eta0, eta1) = self.bit_efficiencies(s);
        let theta = if self.is_rotated() { s.theta } else { 0.0 };
        OutcomeTriple::from_bits(
            Mat2::outer(ket_theta(theta)).scale(eta0),
            Mat2::outer(ket_theta_perp(theta)).scale(eta1),
        )
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Branch::Direct => "M",
            Branch::Swapped => "M'",
            Branch::DirectRotated => "M''",
            Branch::SwappedRotated => "M'''",
        };
        f.write_str(s)
    }
}

/// The four conditional measurements `(M, M', M'', M''')`.
pub fn conditional_measurements(s: &MeasurementSetting) -> [OutcomeTriple; 4] {
    Branch::ALL.map(|b| b.measurement(s))
}

/// Equal-weight average of the four conditional measurements.
pub fn averaged_povm(s: &MeasurementSetting) -> Povm {
    let [m, m1, m2, m3] = conditional_measurements(s);
    let avg = |f: fn(&OutcomeTriple) -> Mat2| (f(&m) + f(&m1) + f(&m2) + f(&m3)).scale(0.25);
    Povm {
        e0: avg(|t| t.bit0),
        e1: avg(|t| t.bit1),
        ev: avg(|t| t.vacuum),
    }
}

/// `1 - Tr(rho Ev)`.
pub fn detection_probability(s: &MeasurementSetting, rho: &QubitState) -> f64 {
    1.0 - rho.expectation(&averaged_povm(s).ev)
}

/// Smallest and largest eigenvalue shared by `E0` and `E1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtremalProbabilities {
    pub p_min: f64,
    pub p_max: f64,
}

/// Numerical spectra of `E0` and `E1`; both are returned so callers can check
/// they coincide.
pub fn bit_spectra(s: &MeasurementSetting) -> ([f64; 2], [f64; 2]) {
    let povm = averaged_povm(s);
    (
        povm.e0.hermitian_eigen().values,
        povm.e1.hermitian_eigen().values,
    )
}

pub fn povm_extremal_probabilities(s: &MeasurementSetting) -> ExtremalProbabilities {
    let (e0, e1) = bit_spectra(s);
    ExtremalProbabilities {
        p_min: e0[0].min(e1[0]),
        p_max: e0[1].max(e1[1]),
    }
}

/// Lowest error rate a single photon can cause at basis angle `theta`:
/// `(1 - cos(theta)) / 2`.
pub fn qber_min(theta: f64) -> f64 {
    0.5 * (1.0 - theta.cos())
}

/// Pure state minimizing the wrong-bit probability, and whether it is unique.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttackState {
    pub state: QubitState,
    pub vector: [Complex64; 2],
    pub unique: bool,
    /// `Tr(rho E_wrong) / p_det`; NaN when `p_det = 0`.
    pub achieved_qber: f64,
}

/// Eigenvector of the wrong-bit POVM element for its smallest eigenvalue.
///
/// At `theta = pi/2` the spectrum is degenerate and every state is optimal;
/// the result is then flagged non-unique.
pub fn optimal_attack_state(s: &MeasurementSetting, alice_bit: u8) -> AttackState {
    let povm = averaged_povm(s);
    let wrong = povm.element(1 - alice_bit.min(1));
    let unique = (FRAC_PI_2 - s.theta).abs() > 1e-12 && s.p_det() > 0.0;
    let vector = if s.p_det() > 0.0 {
        wrong.hermitian_eigen().vectors[0]
    } else {
        // Zero efficiency: every state gives the same (null) statistics.
        // Fall back to the zero-efficiency-free geometry.
        let unit = MeasurementSetting { eta_a: 1.0, eta_b: 1.0, theta: s.theta };
        return AttackState {
            achieved_qber: f64::NAN,
            unique: false,
            ..optimal_attack_state(&unit, alice_bit)
        };
    };
    let state = QubitState::pure(vector).expect("eigenvector is normalized");
    AttackState {
        state,
        vector,
        unique,
        achieved_qber: state.expectation(wrong) / s.p_det(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn setting(a: f64, b: f64, t: f64) -> MeasurementSetting {
        MeasurementSetting::new(a, b, t).unwrap()
    }

    #[test]
    fn aligned_unit_efficiency_collapses_rotated_branches() {
        let [m, m1, m2, m3] = conditional_measurements(&setting(1.0, 1.0, 0.0));
        assert_eq!(m2, m);
        assert_eq!(m3, m1);
    }

    #[test]
    fn zero_efficiency_gives_identity_vacuum() {
        for t in [0.0, 0.4, FRAC_PI_2] {
            for tri in conditional_measurements(&setting(0.0, 0.0, t)) {
                assert_eq!(tri.bit0.max_abs_diff(&Mat2::ZERO), 0.0);
                assert_eq!(tri.bit1.max_abs_diff(&Mat2::ZERO), 0.0);
                assert_eq!(tri.vacuum.max_abs_diff(&Mat2::IDENTITY), 0.0);
            }
        }
    }

    #[test]
    fn rotated_branch_matches_hand_expansion() {
        let [_, _, m2, m3] = conditional_measurements(&setting(0.2, 0.1, PI / 3.0));
        let (h, s3) = (0.5, 3f64.sqrt() / 2.0);
        let expected_0 = Mat2::real([[h * h, h * s3], [h * s3, s3 * s3]]).scale(0.2);
        // |theta_perp> = (sqrt3/2, -1/2)
        let expected_1 = Mat2::real([[s3 * s3, -h * s3], [-h * s3, h * h]]).scale(0.1);
        assert!(m2.bit0.max_abs_diff(&expected_0) < 1e-15);
        assert!(m2.bit1.max_abs_diff(&expected_1) < 1e-15);
        assert!(m3.bit0.max_abs_diff(&expected_0.scale(0.5)) < 1e-15);
    }

    #[test]
    fn averaged_povm_perfect_detectors() {
        let p = averaged_povm(&setting(1.0, 1.0, 0.0));
        assert!(p.e0.max_abs_diff(&Mat2::real([[1.0, 0.0], [0.0, 0.0]])) < 1e-15);
        assert!(p.e1.max_abs_diff(&Mat2::real([[0.0, 0.0], [0.0, 1.0]])) < 1e-15);
        assert!(p.ev.max_abs_diff(&Mat2::ZERO) < 1e-15);
    }

    #[test]
    fn averaged_povm_closed_forms() {
        let t = PI / 3.0;
        let p = averaged_povm(&setting(0.2, 0.1, t));
        assert!(p.ev.max_abs_diff(&Mat2::IDENTITY.scale(0.85)) < 1e-12);
        let (sn, cs) = t.sin_cos();
        let e0 = Mat2::real([[1.0 + cs * cs, sn * cs], [sn * cs, sn * sn]]).scale(0.25 * 0.3);
        let e1 = Mat2::real([[sn * sn, -sn * cs], [-sn * cs, 1.0 + cs * cs]]).scale(0.25 * 0.3);
        assert!(p.e0.max_abs_diff(&e0) < 1e-15);
        assert!(p.e1.max_abs_diff(&e1) < 1e-15);
        assert!(p.completeness_error() < 1e-15);
    }

    #[test]
    fn detection_probability_closed_form() {
        let s = setting(0.1, 0.05, 1.0);
        for bit in [0, 1] {
            assert_abs_diff_eq!(detection_probability(&s, &QubitState::basis(bit)), 0.075, epsilon = 1e-15);
        }
        let zero = setting(0.0, 0.0, 0.7);
        assert_eq!(detection_probability(&zero, &QubitState::basis(0)), 0.0);
    }

    #[test]
    fn extremal_probabilities() {
        let e = povm_extremal_probabilities(&setting(0.2, 0.1, PI / 3.0));
        assert_abs_diff_eq!(e.p_min, 0.0375, epsilon = 1e-12);
        assert_abs_diff_eq!(e.p_max, 0.1125, epsilon = 1e-12);

        let e = povm_extremal_probabilities(&setting(0.3, 0.5, 0.0));
        assert_abs_diff_eq!(e.p_min, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(e.p_max, 0.4, epsilon = 1e-15);

        let e = povm_extremal_probabilities(&setting(0.3, 0.5, FRAC_PI_2));
        assert_abs_diff_eq!(e.p_min, 0.2, epsilon = 1e-12);
        assert_abs_diff_eq!(e.p_max, 0.2, epsilon = 1e-12);
    }

    #[test]
    fn qber_min_values() {
        assert_eq!(qber_min(0.0), 0.0);
        assert_abs_diff_eq!(qber_min(FRAC_PI_2), 0.5, epsilon = 1e-15);
        let s = setting(0.2, 0.1, PI / 3.0);
        let from_spectrum = povm_extremal_probabilities(&s).p_min / s.p_det();
        assert_abs_diff_eq!(qber_min(PI / 3.0), 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(from_spectrum, 0.25, epsilon = 1e-12);
    }

    #[test]
    fn optimal_state_is_half_angle() {
        let a = optimal_attack_state(&setting(0.2, 0.1, PI / 3.0), 0);
        assert!(a.unique);
        assert_abs_diff_eq!(a.vector[0].re, (PI / 6.0).cos(), epsilon = 1e-12);
        assert_abs_diff_eq!(a.vector[1].re, (PI / 6.0).sin(), epsilon = 1e-12);
        assert_abs_diff_eq!(a.achieved_qber, 0.25, epsilon = 1e-12);
    }

    #[test]
    fn optimal_state_aligned() {
        let zero = optimal_attack_state(&setting(0.2, 0.1, 0.0), 0);
        assert!(zero.state.matrix().max_abs_diff(QubitState::basis(0).matrix()) < 1e-15);
        let one = optimal_attack_state(&setting(0.2, 0.1, 0.0), 1);
        assert!(one.state.matrix().max_abs_diff(QubitState::basis(1).matrix()) < 1e-15);
        assert_eq!(one.achieved_qber, 0.0);
    }

    #[test]
    fn optimal_state_degenerate_flagged() {
        let a = optimal_attack_state(&setting(0.2, 0.1, FRAC_PI_2), 0);
        assert!(!a.unique);
        assert_abs_diff_eq!(a.achieved_qber, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn invalid_inputs_rejected() {
        assert!(MeasurementSetting::new(1.1, 0.0, 0.0).is_err());
        assert!(MeasurementSetting::new(0.1, -0.1, 0.0).is_err());
        assert!(MeasurementSetting::new(0.1, 0.1, 1.6).is_err());
        assert!(matches!(
            QubitState::new(Mat2::real([[1.0, 0.0], [0.0, 1.0]])),
            Err(QuantumError::BadTrace(_))
        ));
        assert!(matches!(
            QubitState::new(Mat2::real([[0.5, 0.1], [0.0, 0.5]])),
            Err(QuantumError::NotHermitian(_))
        ));
        assert!(matches!(
            QubitState::new(Mat2::real([[1.5, 0.0], [0.0, -0.5]])),
            Err(QuantumError::NotPositive(_))
        ));
    }

    #[test]
    fn complex_state_accepted() {
        let v = [c(0.6), Complex64::new(0.0, 0.8)];
        let s = QubitState::pure(v).unwrap();
        assert_abs_diff_eq!(s.matrix().get(0, 1).im, -0.48, epsilon = 1e-15);
    }
}
