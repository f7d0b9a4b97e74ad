//! Synthetic hands and labeled traces for tests, the UAT scenarios and demos.

use crate::config::SessionConfig;
use crate::engine::ms_for_tick;
use crate::landmark::{LandmarkFrame, Point2D, LANDMARK_COUNT};
use crate::trace::{GestureClass, TraceLine, TraceRecord};

const MCP: (f64, f64) = (0.5, 0.55);
const SEGMENT: f64 = 0.18;

/// A hand with a straight index finger tilted `tilt_deg` from image-up
/// (positive toward +x), wrist directly behind the knuckle.
pub fn pointing_hand(tilt_deg: f64) -> [Point2D; LANDMARK_COUNT] {
    hand_with_bend(tilt_deg, 180.0)
}

/// Like [`pointing_hand`] but the knuckle angle is `extension_deg` (180 is
/// straight). The wrist ray stays fixed below the knuckle's tilt axis.
pub fn hand_with_bend(tilt_deg: f64, extension_deg: f64) -> [Point2D; LANDMARK_COUNT] {
    let tilt = tilt_deg.to_radians();
    let (mx, my) = MCP;
    let tip = (mx + SEGMENT * tilt.sin(), my - SEGMENT * tilt.cos());
    // wrist ray is the tip ray rotated by extension_deg about the knuckle
    let back = tilt + extension_deg.to_radians();
    let wrist = (mx + SEGMENT * back.sin(), my - SEGMENT * back.cos());

    let lerp = |a: (f64, f64), b: (f64, f64), s: f64| Point2D::new(a.0 + (b.0 - a.0) * s, a.1 + (b.1 - a.1) * s);
    let mut pts = [Point2D::new(mx, my); LANDMARK_COUNT];
    pts[0] = Point2D::new(wrist.0, wrist.1);
    // thumb and the folded fingers sit around the palm
    for (k, i) in (1..=4).enumerate() {
        pts[i] = lerp(wrist, (mx - 0.08, my), 0.3 + 0.2 * k as f64);
    }
    pts[5] = Point2D::new(mx, my);
    for (k, i) in (6..=8).enumerate() {
        pts[i] = lerp((mx, my), tip, (k + 1) as f64 / 3.0);
    }
    for (f, base) in [9usize, 13, 17].into_iter().enumerate() {
        let knuckle = lerp(wrist, (mx + 0.03 * (f + 1) as f64, my), 0.95);
        for j in 0..4 {
            pts[base + j] = lerp((knuckle.x, knuckle.y), wrist, 0.1 * j as f64);
        }
    }
    pts
}

pub fn pointing_frame(timestamp_ms: u64, tilt_deg: f64) -> LandmarkFrame {
    LandmarkFrame::with_hand(timestamp_ms, &pointing_hand(tilt_deg)).expect("synthetic hand is in range")
}

/// A frame whose tilt, as measured after the session's optional mirroring,
/// is `tilt_deg`.
pub fn player_frame(timestamp_ms: u64, tilt_deg: f64, cfg: &SessionConfig) -> LandmarkFrame {
    pointing_frame(timestamp_ms, if cfg.mirror_input { -tilt_deg } else { tilt_deg })
}

/// Representative tilt for a class: twice the enter threshold, clamped below 90.
pub fn class_tilt(class: GestureClass, cfg: &SessionConfig) -> Option<f64> {
    let t = (2.0 * cfg.filter.enter_deg).min(80.0);
    match class {
        GestureClass::Left => Some(-t),
        GestureClass::Right => Some(t),
        GestureClass::Neutral => Some(0.0),
        GestureClass::None => None,
    }
}

/// One frame per tick starting at tick 1, each followed by its label line.
pub fn labeled_trace(segments: &[(GestureClass, usize)], cfg: &SessionConfig) -> TraceRecord {
    let tilts: Vec<Option<f64>> =
        segments.iter().flat_map(|&(class, n)| std::iter::repeat_n(class_tilt(class, cfg), n)).collect();
    let labels: Vec<GestureClass> = segments.iter().flat_map(|&(class, n)| std::iter::repeat_n(class, n)).collect();
    tilt_trace(&tilts, Some(&labels), cfg)
}

/// One frame per tick starting at tick 1; `None` is a frame without a hand.
pub fn tilt_trace(tilts: &[Option<f64>], labels: Option<&[GestureClass]>, cfg: &SessionConfig) -> TraceRecord {
    let mut lines = Vec::with_capacity(tilts.len() * 2);
    for (i, tilt) in tilts.iter().enumerate() {
        let t = ms_for_tick(i as u64 + 1, cfg.game.tick_hz);
        let frame = match tilt {
            Some(deg) => player_frame(t, *deg, cfg),
            None => LandmarkFrame::empty(t),
        };
        lines.push(TraceLine::Frame(frame));
        if let Some(label) = labels.and_then(|l| l.get(i)) {
            lines.push(TraceLine::Label { timestamp_ms: t, label: *label });
        }
    }
    TraceRecord { header: None, lines }
}
