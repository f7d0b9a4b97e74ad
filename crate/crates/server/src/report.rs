//! Machine-readable evaluation reports and their human summaries.

use std::fmt::Write as _;

use fingersteer_core::eval::{EvalMetrics, SweepRow, UatReport};
use fingersteer_core::trace::GestureClass;
use serde::Serialize;

/// Top-level JSON document written by `eval`.
#[derive(Debug, Serialize)]
pub struct EvalReport {
    pub trace: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metrics: Option<EvalMetrics>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Vec<SweepRow>>,
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| format!("{x:.2}"))
}

pub fn metrics_table(m: &EvalMetrics) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "labeled frames      {}", m.labeled_frames);
    let _ = writeln!(s, "per-frame accuracy  {:.4}", m.per_frame_accuracy);
    let _ = writeln!(
        s,
        "events              expected {} emitted {} edit distance {}",
        m.expected_events, m.emitted_events, m.event_edit_distance
    );
    let _ = writeln!(
        s,
        "transitions         {} (missed {}), mean onset latency {} frames",
        m.onset_latency_frames.len(),
        m.missed_transitions(),
        opt(m.mean_latency())
    );
    let _ = writeln!(s, "confusion (rows = label, columns = predicted)");
    let _ = write!(s, "{:>10}", "");
    for c in GestureClass::ALL {
        let _ = write!(s, "{:>9}", c.as_str());
    }
    s.push('\n');
    for (c, row) in GestureClass::ALL.iter().zip(&m.confusion) {
        let _ = write!(s, "{:>10}", c.as_str());
        for n in row {
            let _ = write!(s, "{n:>9}");
        }
        s.push('\n');
    }
    s
}

pub fn sweep_table(rows: &[SweepRow]) -> String {
    let mut s = format!(
        "{:>7} {:>7} {:>8} {:>9} {:>8} {:>6} {:>9}\n",
        "enter", "exit", "debounce", "accuracy", "emitted", "edit", "latency"
    );
    for r in rows {
        let m = &r.metrics;
        let _ = writeln!(
            s,
            "{:>7.2} {:>7.2} {:>8} {:>9.4} {:>8} {:>6} {:>9}",
            r.point.enter_deg,
            r.point.exit_deg,
            r.point.debounce_frames,
            m.per_frame_accuracy,
            m.emitted_events,
            m.event_edit_distance,
            opt(m.mean_latency())
        );
    }
    s
}

pub fn uat_table(r: &UatReport) -> String {
    let mut s = String::new();
    for row in &r.rows {
        let verdict = if row.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "{verdict}  {:<20} {}", row.event, row.expected);
        let _ = writeln!(s, "      {}", row.detail);
    }
    s
}
