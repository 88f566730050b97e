//! Combinatorial check that extra photons cannot push the merged QBER below
//! the single-photon floor.
//!
//! A batch of two-photon events splits into `n1` events where only photon 1
//! clicked, `n2` where only photon 2 clicked and `c` where both did. Photon
//! `i` reports bit 1 in `n_{i,1}` of its solo events and `c_{i,1}` of the
//! joint ones, and its own floor `Q_i` forces both counts up to at least
//! `ceil(n_i Q_i)` and `ceil(c Q_i)`. Double clicks resolve to a random bit,
//! so the expected merged error count is `n11 + n21 + (c11 + c21) / 2`.
//!
//! The check enumerates every `(n1, n2, c)` cell with `n1 + n2 + c <= N` and
//! minimizes the merged QBER over the cell's whole feasible box of
//! correlation assignments. Integer ceilings introduce a rounding slack of at
//! most `1 / (2N)` against the continuum bound.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::{map_indexed, Execution};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("scenario has no detections")]
    NoDetections,
    #[error("Q{index} = {value} outside [0, 1/2]")]
    QberOutOfRange { index: usize, value: f64 },
    #[error("count constraint violated: {0}")]
    Infeasible(String),
    #[error("need 2..=4 per-photon floors, got {0}")]
    PhotonCount(usize),
    #[error("count budget must be at least 1")]
    ZeroBudget,
}

/// Integer ceiling that ignores float noise such as `30 * 0.1 = 3.0000000000000004`.
pub fn count_floor(n: u64, q: f64) -> u64 {
    ((n as f64 * q) - 1e-9).ceil().max(0.0) as u64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventCounts {
    pub n1: u64,
    pub n2: u64,
    pub c: u64,
    /// `n_{1,1}`: solo photon-1 events read as bit 1.
    pub n1_wrong: u64,
    pub n2_wrong: u64,
    /// `c_{1,1}`: joint events where photon 1 read bit 1.
    pub c1_wrong: u64,
    pub c2_wrong: u64,
}

impl EventCounts {
    pub fn total(&self) -> u64 {
        self.n1 + self.n2 + self.c
    }

    /// Twice the expected number of merged errors.
    fn doubled_errors(&self) -> u64 {
        2 * (self.n1_wrong + self.n2_wrong) + self.c1_wrong + self.c2_wrong
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoPhotonScenario {
    pub q1: f64,
    pub q2: f64,
    pub counts: EventCounts,
}

impl TwoPhotonScenario {
    pub fn validate(&self) -> Result<(), OracleError> {
        for (index, value) in [(1, self.q1), (2, self.q2)] {
            if !(0.0..=0.5).contains(&value) {
                return Err(OracleError::QberOutOfRange { index, value });
            }
        }
        let k = &self.counts;
        let rules = [
            (k.n1_wrong <= k.n1, "n_{1,1} <= n1"),
            (k.n2_wrong <= k.n2, "n_{2,1} <= n2"),
            (k.c1_wrong <= k.c, "c_{1,1} <= c"),
            (k.c2_wrong <= k.c, "c_{2,1} <= c"),
            (k.n1_wrong >= count_floor(k.n1, self.q1), "n_{1,1} >= ceil(n1 Q1)"),
            (k.n2_wrong >= count_floor(k.n2, self.q2), "n_{2,1} >= ceil(n2 Q2)"),
            (k.c1_wrong >= count_floor(k.c, self.q1), "c_{1,1} >= ceil(c Q1)"),
            (k.c2_wrong >= count_floor(k.c, self.q2), "c_{2,1} >= ceil(c Q2)"),
        ];
        match rules.iter().find(|(ok, _)| !ok) {
            Some((_, rule)) => Err(OracleError::Infeasible((*rule).to_string())),
            None => Ok(()),
        }
    }
}

/// Expected merged QBER `(n11 + n21 + (c11 + c21)/2) / (n1 + n2 + c)`.
pub fn merged_qber(s: &TwoPhotonScenario) -> Result<f64, OracleError> {
    s.validate()?;
    if s.counts.total() == 0 {
        return Err(OracleError::NoDetections);
    }
    Ok(s.counts.doubled_errors() as f64 / (2 * s.counts.total()) as f64)
}

/// Summary of an exhaustive bound check; serialized as the oracle's JSON output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub q1: f64,
    pub q2: f64,
    pub count_budget: u64,
    /// `min(Q1, Q2)`.
    pub bound: f64,
    pub slack: f64,
    pub holds: bool,
    pub min_merged_qber: f64,
    pub minimizing: TwoPhotonScenario,
    pub cells_checked: u64,
    pub cells_skipped: u64,
    /// Number of correlation assignments the minimization ranged over.
    pub assignments_covered: u128,
    pub violations: u64,
}

#[derive(Debug, Clone, Copy)]
struct CellMin {
    counts: EventCounts,
}

impl CellMin {
    /// Exact comparison of `doubled / (2 total)` values; ties go to fewer events.
    fn better_than(&self, other: &CellMin) -> bool {
        let (a, b) = (&self.counts, &other.counts);
        let lhs = a.doubled_errors() as u128 * b.total() as u128;
        let rhs = b.doubled_errors() as u128 * a.total() as u128;
        lhs < rhs || (lhs == rhs && a.total() < b.total())
    }

    fn qber(&self) -> f64 {
        self.counts.doubled_errors() as f64 / (2 * self.counts.total()) as f64
    }
}

#[derive(Debug, Clone)]
struct Partial {
    best: Option<CellMin>,
    cells: u64,
    skipped: u64,
    assignments: u128,
    violations: u64,
}

fn range_len(lo: u64, hi: u64) -> u128 {
    if hi >= lo {
        (hi - lo + 1) as u128
    } else {
        0
    }
}

/// Minimum over a cell's feasible box. The merged QBER is a positive
/// combination of the four wrong-bit counts, so it is minimized at the
/// box's lower corner.
fn minimize_cell(q1: f64, q2: f64, n1: u64, n2: u64, c: u64) -> Option<(CellMin, u128)> {
    let lo = [count_floor(n1, q1), count_floor(n2, q2), count_floor(c, q1), count_floor(c, q2)];
    let hi = [n1, n2, c, c];
    let size: u128 = lo.iter().zip(&hi).map(|(&l, &h)| range_len(l, h)).product();
    if size == 0 {
        return None;
    }
    let counts = EventCounts {
        n1,
        n2,
        c,
        n1_wrong: lo[0],
        n2_wrong: lo[1],
        c1_wrong: lo[2],
        c2_wrong: lo[3],
    };
    Some((CellMin { counts }, size))
}

/// Literal nested enumeration of every assignment in a cell; independent of
/// the lower-corner argument and used to cross-check it.
pub fn brute_force_cell(q1: f64, q2: f64, n1: u64, n2: u64, c: u64) -> Option<(TwoPhotonScenario, u128)> {
    let mut best: Option<CellMin> = None;
    let mut seen = 0u128;
    for n1_wrong in 0..=n1 {
        for n2_wrong in 0..=n2 {
            for c1_wrong in 0..=c {
                for c2_wrong in 0..=c {
                    let s = TwoPhotonScenario {
                        q1,
                        q2,
                        counts: EventCounts {
                            n1,
                            n2,
                            c,
                            n1_wrong,
                            n2_wrong,
                            c1_wrong,
                            c2_wrong,
                        },
                    };
                    if s.validate().is_err() {
                        continue;
                    }
                    seen += 1;
                    let cand = CellMin { counts: s.counts };
                    if best.is_none_or(|b| cand.better_than(&b)) {
                        best = Some(cand);
                    }
                }
            }
        }
    }
    best.map(|b| (TwoPhotonScenario { q1, q2, counts: b.counts }, seen))
}

fn validate_q(qs: &[f64]) -> Result<(), OracleError> {
    for (i, &q) in qs.iter().enumerate() {
        if !(0.0..=0.5).contains(&q) {
            return Err(OracleError::QberOutOfRange { index: i + 1, value: q });
        }
    }
    Ok(())
}

/// Exhaustively check `Q >= min(Q1, Q2) - 1/(2N)` over every scenario with
/// `1 <= n1 + n2 + c <= N`.
pub fn verify_bound(q1: f64, q2: f64, budget: u64) -> Result<BoundCheck, OracleError> {
    verify_bound_with(q1, q2, budget, Execution::default())
}

pub fn verify_bound_with(q1: f64, q2: f64, budget: u64, exec: Execution) -> Result<BoundCheck, OracleError> {
    validate_q(&[q1, q2])?;
    if budget == 0 {
        return Err(OracleError::ZeroBudget);
    }
    let bound = q1.min(q2);
    let slack = 1.0 / (2 * budget) as f64;
    let floor = bound - slack;
    let partials = map_indexed(exec, budget as usize + 1, |n1| {
        let n1 = n1 as u64;
        let mut p = Partial {
            best: None,
            cells: 0,
            skipped: 0,
            assignments: 0,
            violations: 0,
        };
        for n2 in 0..=budget - n1 {
            for c in 0..=budget - n1 - n2 {
                if n1 + n2 + c == 0 {
                    continue;
                }
                match minimize_cell(q1, q2, n1, n2, c) {
                    None => p.skipped += 1,
                    Some((m, size)) => {
                        p.cells += 1;
                        p.assignments += size;
                        if m.qber() < floor - 1e-12 {
                            p.violations += 1;
                        }
                        if p.best.is_none_or(|b| m.better_than(&b)) {
                            p.best = Some(m);
                        }
                    }
                }
            }
        }
        p
    });
    let mut total = Partial {
        best: None,
        cells: 0,
        skipped: 0,
        assignments: 0,
        violations: 0,
    };
    for p in partials {
        total.cells += p.cells;
        total.skipped += p.skipped;
        total.assignments += p.assignments;
        total.violations += p.violations;
        if let Some(b) = p.best {
            if total.best.is_none_or(|t| b.better_than(&t)) {
                total.best = Some(b);
            }
        }
    }
    let best = total.best.expect("budget >= 1 leaves at least one feasible cell");
    Ok(BoundCheck {
        q1,
        q2,
        count_budget: budget,
        bound,
        slack,
        holds: total.violations == 0,
        min_merged_qber: best.qber(),
        minimizing: TwoPhotonScenario { q1, q2, counts: best.counts },
        cells_checked: total.cells,
        cells_skipped: total.skipped,
        assignments_covered: total.assignments,
        violations: total.violations,
    })
}

/// Outcome of the pairwise induction over three or four photons.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InductionCheck {
    pub floors: Vec<f64>,
    pub bound: f64,
    pub holds: bool,
    /// Step `k` merges the first `k + 1` photons (as one) with photon `k + 2`.
    pub steps: Vec<BoundCheck>,
}

/// Fold photons in one at a time: the first `k` photons act as a single
/// photon whose floor is the bound already established for them.
pub fn inductive_extension_check(floors: &[f64], budget: u64) -> Result<InductionCheck, OracleError> {
    if !(2..=4).contains(&floors.len()) {
        return Err(OracleError::PhotonCount(floors.len()));
    }
    validate_q(floors)?;
    let mut aggregate = floors[0];
    let mut steps = Vec::with_capacity(floors.len() - 1);
    for &q in &floors[1..] {
        let step = verify_bound(aggregate, q, budget)?;
        aggregate = step.bound;
        steps.push(step);
    }
    Ok(InductionCheck {
        floors: floors.to_vec(),
        bound: aggregate,
        holds: steps.iter().all(|s| s.holds),
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scenario(q1: f64, q2: f64, k: [u64; 7]) -> TwoPhotonScenario {
        TwoPhotonScenario {
            q1,
            q2,
            counts: EventCounts {
                n1: k[0],
                n2: k[1],
                c: k[2],
                n1_wrong: k[3],
                n2_wrong: k[4],
                c1_wrong: k[5],
                c2_wrong: k[6],
            },
        }
    }

    #[test]
    fn merged_qber_examples() {
        assert_eq!(merged_qber(&scenario(0.1, 0.0, [100, 0, 0, 10, 0, 0, 0])).unwrap(), 0.1);
        assert_eq!(merged_qber(&scenario(0.0, 0.0, [0, 0, 100, 0, 0, 100, 100])).unwrap(), 1.0);
        // tightest counts: ceil(5)=5, ceil(9)=9, ceil(2)=2, ceil(6)=6
        let s = scenario(0.1, 0.3, [50, 30, 20, 5, 9, 2, 6]);
        assert!((merged_qber(&s).unwrap() - 0.18).abs() < 1e-15);
    }

    #[test]
    fn merged_qber_errors() {
        assert_eq!(
            merged_qber(&scenario(0.1, 0.1, [0; 7])).unwrap_err(),
            OracleError::NoDetections
        );
        assert!(matches!(
            merged_qber(&scenario(0.1, 0.3, [50, 30, 20, 4, 9, 2, 6])),
            Err(OracleError::Infeasible(_))
        ));
        assert!(matches!(
            merged_qber(&scenario(0.6, 0.3, [1, 0, 0, 1, 0, 0, 0])),
            Err(OracleError::QberOutOfRange { index: 1, .. })
        ));
    }

    #[test]
    fn count_floor_ignores_float_noise() {
        assert_eq!(count_floor(30, 0.1), 3);
        assert_eq!(count_floor(31, 0.1), 4);
        assert_eq!(count_floor(0, 0.5), 0);
    }

    #[test]
    fn symmetric_floors() {
        let r = verify_bound(0.25, 0.25, 30).unwrap();
        assert!(r.holds);
        assert!(r.min_merged_qber >= 0.25 - 1.0 / 60.0);
        assert_eq!(r.cells_skipped, 0);
    }

    #[test]
    fn zero_floor_is_trivial() {
        let r = verify_bound(0.0, 0.3, 10).unwrap();
        assert!(r.holds);
        assert_eq!(r.min_merged_qber, 0.0);
    }

    #[test]
    fn minimizer_concentrates_on_lower_floor_photon() {
        let r = verify_bound(0.1, 0.3, 60).unwrap();
        assert!(r.holds);
        assert_eq!(r.min_merged_qber, 0.1);
        let k = r.minimizing.counts;
        assert_eq!((k.n1, k.n2, k.c, k.n1_wrong), (10, 0, 0, 1));
    }

    #[test]
    fn lower_corner_matches_brute_force() {
        for (q1, q2) in [(0.0, 0.5), (0.1, 0.3), (0.25, 0.25), (0.5, 0.1)] {
            for n1 in 0..=5 {
                for n2 in 0..=5 {
                    for c in 0..=5 {
                        if n1 + n2 + c == 0 {
                            continue;
                        }
                        let (m, size) = minimize_cell(q1, q2, n1, n2, c).unwrap();
                        let (b, seen) = brute_force_cell(q1, q2, n1, n2, c).unwrap();
                        assert_eq!(seen, size);
                        assert_eq!(m.counts, b.counts);
                    }
                }
            }
        }
    }

    #[test]
    fn induction() {
        let r = inductive_extension_check(&[0.2, 0.2, 0.2], 20).unwrap();
        assert!(r.holds);
        assert_eq!(r.bound, 0.2);
        let r = inductive_extension_check(&[0.1, 0.3, 0.5], 30).unwrap();
        assert!(r.holds && r.steps.len() == 2);
        assert!(r.steps.iter().all(|s| s.min_merged_qber >= 0.1 - 1.0 / 60.0));
        let r = inductive_extension_check(&[0.0, 0.5], 10).unwrap();
        assert!(r.holds && r.bound == 0.0);
        assert!(inductive_extension_check(&[0.1], 10).is_err());
    }

    #[test]
    fn json_summary_round_trip() {
        let r = verify_bound(0.1, 0.25, 12).unwrap();
        let back: BoundCheck = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back, r);
    }
}
