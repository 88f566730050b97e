//! CSV exports for plotting. JSON goes through serde directly.

use crate::engine::SimResult;
use crate::security::ThresholdRow;
use crate::temporal::TemporalResponse;

fn write_rows<I, R>(header: &[&str], rows: I) -> String
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}

/// `t_ns,detections`
pub fn histogram_csv(result: &SimResult) -> String {
    write_rows(
        &["t_ns", "detections"],
        result
            .t_ns
            .iter()
            .zip(&result.detections)
            .map(|(t, d)| [t.to_string(), d.to_string()]),
    )
}

/// `t_ns,qber_min`
pub fn qber_min_csv(resp: &TemporalResponse) -> String {
    write_rows(
        &["t_ns", "qber_min"],
        resp.t_ns()
            .iter()
            .zip(resp.qber_min_curve())
            .map(|(t, q)| [t.to_string(), q.to_string()]),
    )
}

/// `E_prime,f,eta_restricted,objective`
pub fn threshold_scan_csv(rows: &[ThresholdRow]) -> String {
    write_rows(
        &["E_prime", "f", "eta_restricted", "objective"],
        rows.iter().map(|r| {
            [
                r.e_prime.to_string(),
                r.f.to_string(),
                r.eta_restricted.to_string(),
                r.objective.to_string(),
            ]
        }),
    )
}
