//! Sampled detector and basis-selector response over one gate period.
//!
//! Temporal modes are the samples of `t_ns`; there is no interpolation, and
//! every minimum, maximum and threshold comparison is per sample. Because
//! superpositions of temporal modes are not enumerated, a blinding parameter
//! computed here is an upper-bound estimate of the true one.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quantum::{qber_min, MeasurementSetting};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ResponseError {
    #[error("curve needs at least 2 samples, got {0}")]
    TooFewSamples(usize),
    #[error("column {column} has {got} values, expected {expected}")]
    LengthMismatch {
        column: &'static str,
        got: usize,
        expected: usize,
    },
    #[error("malformed row {row}: {reason}")]
    MalformedRow { row: usize, reason: String },
    #[error("unexpected header {0:?}, expected `t_ns,eta_a,eta_b,theta_rad`")]
    BadHeader(String),
    #[error("time grid not strictly increasing at sample {index} ({prev} ns -> {next} ns)")]
    NonMonotoneTime { index: usize, prev: f64, next: f64 },
    #[error("{column} = {value} at sample {index} is outside {range}")]
    OutOfRange {
        column: &'static str,
        index: usize,
        value: f64,
        range: &'static str,
    },
    #[error("bit-mapped window [{start}, {end}] ns is empty or outside the curve support [{lo}, {hi}] ns")]
    WindowOutOfRange { start: f64, end: f64, lo: f64, hi: f64 },
    #[error("theta = {theta} rad at t = {t_ns} ns inside the bit-mapped window (must be 0)")]
    WindowTheta { t_ns: f64, theta: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModeError {
    #[error("mode subset has {got} entries, curve has {expected}")]
    SubsetLength { got: usize, expected: usize },
    #[error("mode subset is empty")]
    EmptySubset,
    #[error("all efficiencies vanish on the selected modes; blinding parameter undefined")]
    DegenerateEfficiencies,
    #[error("threshold E' = {0} outside (0, 1/2]")]
    ThresholdOutOfRange(f64),
}

/// Interval `[start, end]` in ns where optical and software bit-mapping coincide.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BitmappedWindow {
    pub start: f64,
    pub end: f64,
}

impl BitmappedWindow {
    pub fn new(start: f64, end: f64) -> Self {
        BitmappedWindow { start, end }
    }

    pub fn contains(&self, t: f64) -> bool {
        (self.start..=self.end).contains(&t)
    }

    pub fn center(&self) -> f64 {
        0.5 * (self.start + self.end)
    }
}

/// Detector efficiencies and basis-selector angle sampled over one gate period.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TemporalResponse {
    t_ns: Vec<f64>,
    eta_a: Vec<f64>,
    eta_b: Vec<f64>,
    theta: Vec<f64>,
    window: BitmappedWindow,
}

impl TemporalResponse {
    pub fn new(
        t_ns: Vec<f64>,
        eta_a: Vec<f64>,
        eta_b: Vec<f64>,
        theta: Vec<f64>,
        window: BitmappedWindow,
    ) -> Result<Self, ResponseError> {
        let n = t_ns.len();
        if n < 2 {
            return Err(ResponseError::TooFewSamples(n));
        }
        for (column, v) in [("eta_a", &eta_a), ("eta_b", &eta_b), ("theta_rad", &theta)] {
            if v.len() != n {
                return Err(ResponseError::LengthMismatch {
                    column,
                    got: v.len(),
                    expected: n,
                });
            }
        }
        for (i, w) in t_ns.windows(2).enumerate() {
            if w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less) {
                return Err(ResponseError::NonMonotoneTime {
                    index: i + 1,
                    prev: w[0],
                    next: w[1],
                });
            }
        }
        let checks: [(&'static str, &Vec<f64>, f64, &'static str); 3] = [
            ("eta_a", &eta_a, 1.0, "[0, 1]"),
            ("eta_b", &eta_b, 1.0, "[0, 1]"),
            ("theta_rad", &theta, FRAC_PI_2, "[0, pi/2]"),
        ];
        for (column, values, hi, range) in checks {
            if let Some((index, &value)) = values
                .iter()
                .enumerate()
                .find(|(_, v)| !(0.0..=hi).contains(*v))
            {
                return Err(ResponseError::OutOfRange {
                    column,
                    index,
                    value,
                    range,
                });
            }
        }
        let (lo, hi) = (t_ns[0], t_ns[n - 1]);
        if !(window.start <= window.end && window.start >= lo && window.end <= hi) {
            return Err(ResponseError::WindowOutOfRange {
                start: window.start,
                end: window.end,
                lo,
                hi,
            });
        }
        if let Some(i) = (0..n).find(|&i| window.contains(t_ns[i]) && theta[i] != 0.0) {
            return Err(ResponseError::WindowTheta {
                t_ns: t_ns[i],
                theta: theta[i],
            });
        }
        Ok(TemporalResponse {
            t_ns,
            eta_a,
            eta_b,
            theta,
            window,
        })
    }

    pub fn len(&self) -> usize {
        self.t_ns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t_ns.is_empty()
    }

    pub fn t_ns(&self) -> &[f64] {
        &self.t_ns
    }

    pub fn eta_a(&self) -> &[f64] {
        &self.eta_a
    }

    pub fn eta_b(&self) -> &[f64] {
        &self.eta_b
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    pub fn window(&self) -> BitmappedWindow {
        self.window
    }

    pub fn support(&self) -> (f64, f64) {
        (self.t_ns[0], self.t_ns[self.len() - 1])
    }

    pub fn setting(&self, index: usize) -> MeasurementSetting {
        MeasurementSetting::new(self.eta_a[index], self.eta_b[index], self.theta[index])
            .expect("validated at construction")
    }

    /// Index of the sample nearest to `t`, or `None` outside the support.
    pub fn nearest_sample(&self, t: f64) -> Option<usize> {
        let (lo, hi) = self.support();
        if !(lo..=hi).contains(&t) {
            return None;
        }
        let i = self.t_ns.partition_point(|&x| x < t);
        if i == 0 {
            return Some(0);
        }
        if i == self.len() {
            return Some(i - 1);
        }
        // Ties go to the earlier sample.
        Some(if t - self.t_ns[i - 1] <= self.t_ns[i] - t { i - 1 } else { i })
    }

    /// Per-sample minimum QBER `(1 - cos theta) / 2`.
    pub fn qber_min_curve(&self) -> Vec<f64> {
        self.theta.iter().map(|&t| qber_min(t)).collect()
    }
}

/// Boolean selection of temporal modes, one flag per sample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModeSubset {
    mask: Vec<bool>,
}

impl ModeSubset {
    pub fn from_mask(mask: Vec<bool>) -> Self {
        ModeSubset { mask }
    }

    pub fn full(len: usize) -> Self {
        ModeSubset { mask: vec![true; len] }
    }

    pub fn empty(len: usize) -> Self {
        ModeSubset { mask: vec![false; len] }
    }

    /// Samples whose time lies in `[lo, hi]`.
    pub fn time_range(resp: &TemporalResponse, lo: f64, hi: f64) -> Self {
        ModeSubset {
            mask: resp.t_ns().iter().map(|t| (lo..=hi).contains(t)).collect(),
        }
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mask.is_empty()
    }

    pub fn count(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.mask
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(i))
    }

    pub fn contains(&self, index: usize) -> bool {
        self.mask.get(index).copied().unwrap_or(false)
    }

    /// True if every selected sample is contiguous.
    pub fn is_contiguous(&self) -> bool {
        let idx: Vec<usize> = self.indices().collect();
        idx.windows(2).all(|w| w[1] == w[0] + 1)
    }
}

/// Global minimum efficiency over the subset and both detectors, divided by
/// the global maximum.
///
/// With the full subset this is the blinding parameter of the whole gate;
/// with a restricted subset it is the restricted parameter used once only
/// certified modes are counted.
pub fn blinding_parameter(resp: &TemporalResponse, subset: &ModeSubset) -> Result<f64, ModeError> {
    if subset.len() != resp.len() {
        return Err(ModeError::SubsetLength {
            got: subset.len(),
            expected: resp.len(),
        });
    }
    let (lo, hi) = subset
        .indices()
        .flat_map(|i| [resp.eta_a[i], resp.eta_b[i]])
        .fold(None, |acc: Option<(f64, f64)>, e| match acc {
            None => Some((e, e)),
            Some((lo, hi)) => Some((lo.min(e), hi.max(e))),
        })
        .ok_or(ModeError::EmptySubset)?;
    if hi <= 0.0 {
        return Err(ModeError::DegenerateEfficiencies);
    }
    Ok(lo / hi)
}

/// Samples where the single-photon minimum QBER is strictly below `e_prime`.
pub fn subset_where_qber_below(resp: &TemporalResponse, e_prime: f64) -> Result<ModeSubset, ModeError> {
    if !(e_prime > 0.0 && e_prime <= 0.5) {
        return Err(ModeError::ThresholdOutOfRange(e_prime));
    }
    Ok(ModeSubset {
        mask: resp.theta.iter().map(|&t| qber_min(t) < e_prime).collect(),
    })
}

pub const CURVE_HEADER: [&str; 4] = ["t_ns", "eta_a", "eta_b", "theta_rad"];

/// Parse a curve CSV (`t_ns,eta_a,eta_b,theta_rad`) and validate it against
/// the bit-mapped window supplied by the run configuration.
pub fn load_response(text: &str, window: BitmappedWindow) -> Result<TemporalResponse, ResponseError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header = reader
        .headers()
        .map_err(|e| ResponseError::MalformedRow {
            row: 0,
            reason: e.to_string(),
        })?
        .clone();
    if header.iter().ne(CURVE_HEADER) {
        return Err(ResponseError::BadHeader(header.iter().collect::<Vec<_>>().join(",")));
    }
    let mut cols: [Vec<f64>; 4] = Default::default();
    for (i, record) in reader.records().enumerate() {
        let row = i + 1;
        let record = record.map_err(|e| ResponseError::MalformedRow {
            row,
            reason: e.to_string(),
        })?;
        if record.len() != 4 {
            return Err(ResponseError::MalformedRow {
                row,
                reason: format!("expected 4 fields, found {}", record.len()),
            });
        }
        for (col, field) in cols.iter_mut().zip(record.iter()) {
            let v: f64 = field.parse().map_err(|_| ResponseError::MalformedRow {
                row,
                reason: format!("not a number: {field:?}"),
            })?;
            col.push(v);
        }
    }
    let [t, a, b, th] = cols;
    TemporalResponse::new(t, a, b, th, window)
}

/// Serialize a curve in the same CSV format `load_response` reads.
pub fn write_response(resp: &TemporalResponse) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CURVE_HEADER).expect("in-memory write");
    for i in 0..resp.len() {
        w.write_record([
            resp.t_ns[i].to_string(),
            resp.eta_a[i].to_string(),
            resp.eta_b[i].to_string(),
            resp.theta[i].to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}
