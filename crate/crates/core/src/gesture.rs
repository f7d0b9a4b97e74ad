//! Per-frame index finger geometry.
//!
//! Direction comes from the inclination of the index MCP→TIP vector against
//! image-up; the wrist only participates through the extension gate, the
//! interior angle at the MCP between the wrist and tip rays.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::landmark::{LandmarkFrame, LandmarkIndex, Point2D};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ClassifierConfig {
    /// Minimum MCP vertex angle for the finger to count as pointing.
    pub extension_gate_deg: f64,
    /// Minimum normalized length of the wrist→MCP and MCP→TIP segments.
    pub min_segment_len: f64,
}

impl Default for ClassifierConfig {
    fn default() -> Self {
        Self { extension_gate_deg: 150.0, min_segment_len: 0.02 }
    }
}

impl ClassifierConfig {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.extension_gate_deg > 0.0 && self.extension_gate_deg <= 180.0) {
            return Err(format!("classifier.extension_gate_deg must be in (0, 180], got {}", self.extension_gate_deg));
        }
        if !(self.min_segment_len > 0.0 && self.min_segment_len.is_finite()) {
            return Err(format!("classifier.min_segment_len must be positive, got {}", self.min_segment_len));
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, Copy, PartialEq)]
#[error("degenerate points: segment length {len} below minimum {min}")]
pub struct DegeneratePoints {
    pub len: f64,
    pub min: f64,
}

/// Continuous per-frame reading. When `valid` is false both angles are zero.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct GestureMeasurement {
    pub tilt_deg: f64,
    pub extension_deg: f64,
    pub valid: bool,
}

impl GestureMeasurement {
    pub const INVALID: GestureMeasurement = GestureMeasurement { tilt_deg: 0.0, extension_deg: 0.0, valid: false };
}

fn check_len(a: &Point2D, b: &Point2D, min: f64) -> Result<(f64, f64), DegeneratePoints> {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let len = dx.hypot(dy);
    if len < min || !len.is_finite() {
        return Err(DegeneratePoints { len, min });
    }
    Ok((dx, dy))
}

/// Signed angle of `tip - mcp` against image-up, positive toward +x.
pub fn tilt_angle(mcp: &Point2D, tip: &Point2D, min_segment_len: f64) -> Result<f64, DegeneratePoints> {
    let (dx, dy) = check_len(mcp, tip, min_segment_len)?;
    // image y grows downward, so "up" is -y
    Ok(dx.atan2(-dy).to_degrees())
}

/// Interior angle at `mcp` between the rays toward `wrist` and `tip`, in [0, 180].
pub fn vertex_angle(
    wrist: &Point2D,
    mcp: &Point2D,
    tip: &Point2D,
    min_segment_len: f64,
) -> Result<f64, DegeneratePoints> {
    let (ax, ay) = check_len(mcp, wrist, min_segment_len)?;
    let (bx, by) = check_len(mcp, tip, min_segment_len)?;
    let norm = ax.hypot(ay) * bx.hypot(by);
    let cos = (ax * bx + ay * by) / norm;
    let sin = (ax * by - ay * bx).abs() / norm;
    // atan2 keeps full precision near 0 and 180 where acos(cos) does not
    Ok(sin.atan2(cos).to_degrees())
}

pub fn measure(frame: &LandmarkFrame, cfg: &ClassifierConfig) -> GestureMeasurement {
    let Some(hand) = frame.hand.as_ref() else {
        return GestureMeasurement::INVALID;
    };
    let wrist = &hand[LandmarkIndex::Wrist.index()];
    let mcp = &hand[LandmarkIndex::IndexFingerMcp.index()];
    let tip = &hand[LandmarkIndex::IndexFingerTip.index()];

    let Ok(extension_deg) = vertex_angle(wrist, mcp, tip, cfg.min_segment_len) else {
        return GestureMeasurement::INVALID;
    };
    if extension_deg < cfg.extension_gate_deg {
        return GestureMeasurement::INVALID;
    }
    match tilt_angle(mcp, tip, cfg.min_segment_len) {
        Ok(tilt_deg) => GestureMeasurement { tilt_deg, extension_deg, valid: true },
        Err(_) => GestureMeasurement::INVALID,
    }
}
