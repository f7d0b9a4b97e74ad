//! Hysteresis + debounce over the tilt stream, producing edge-triggered
//! press/release command events.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::gesture::GestureMeasurement;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FilterConfig {
    pub enter_deg: f64,
    pub exit_deg: f64,
    pub debounce_frames: u32,
    pub no_hand_release_frames: u32,
}

impl Default for FilterConfig {
    fn default() -> Self {
        Self { enter_deg: 20.0, exit_deg: 12.0, debounce_frames: 3, no_hand_release_frames: 5 }
    }
}

impl FilterConfig {
    pub fn validate(&self) -> Result<(), String> {
        if !(0.0 < self.exit_deg && self.exit_deg < self.enter_deg && self.enter_deg < 90.0) {
            return Err(format!(
                "filter thresholds must satisfy 0 < exit_deg < enter_deg < 90, got exit {} enter {}",
                self.exit_deg, self.enter_deg
            ));
        }
        if self.debounce_frames < 1 {
            return Err("filter.debounce_frames must be at least 1".into());
        }
        if self.no_hand_release_frames < 1 {
            return Err("filter.no_hand_release_frames must be at least 1".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Left,
    Right,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Left => "left",
            Direction::Right => "right",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EventKind {
    Press,
    Release,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CommandEvent {
    pub kind: EventKind,
    pub direction: Direction,
    pub timestamp_ms: u64,
}

impl CommandEvent {
    pub fn press(direction: Direction, timestamp_ms: u64) -> Self {
        Self { kind: EventKind::Press, direction, timestamp_ms }
    }

    pub fn release(direction: Direction, timestamp_ms: u64) -> Self {
        Self { kind: EventKind::Release, direction, timestamp_ms }
    }
}

/// Debounced direction state. `held` is `None` when neutral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DirectionState {
    pub held: Option<Direction>,
    pub pending_candidate: Option<Option<Direction>>,
    pub pending_count: u32,
    pub invalid_count: u32,
}

impl DirectionState {
    pub fn neutral() -> Self {
        Self::default()
    }

    pub fn reset(&self) -> Self {
        Self::default()
    }
}

/// Instantaneous label for a valid measurement given the held direction.
pub fn label(held: Option<Direction>, tilt_deg: f64, cfg: &FilterConfig) -> Option<Direction> {
    if tilt_deg >= cfg.enter_deg {
        Some(Direction::Right)
    } else if tilt_deg <= -cfg.enter_deg {
        Some(Direction::Left)
    } else if held.is_some() && tilt_deg.abs() > cfg.exit_deg {
        // hysteresis band keeps whatever is held
        held
    } else {
        None
    }
}

/// Advances the filter by one measurement. Events are appended to `out`.
pub fn step(
    state: &DirectionState,
    m: &GestureMeasurement,
    timestamp_ms: u64,
    cfg: &FilterConfig,
    out: &mut Vec<CommandEvent>,
) -> DirectionState {
    let mut next = *state;
    if !m.valid {
        next.invalid_count = next.invalid_count.saturating_add(1);
        if next.invalid_count >= cfg.no_hand_release_frames {
            if let Some(dir) = next.held {
                out.push(CommandEvent::release(dir, timestamp_ms));
            }
            next = DirectionState::neutral();
        }
        return next;
    }

    next.invalid_count = 0;
    let wanted = label(next.held, m.tilt_deg, cfg);
    if wanted == next.held {
        next.pending_candidate = None;
        next.pending_count = 0;
        return next;
    }
    if next.pending_candidate == Some(wanted) {
        next.pending_count += 1;
    } else {
        next.pending_candidate = Some(wanted);
        next.pending_count = 1;
    }
    if next.pending_count >= cfg.debounce_frames {
        if let Some(old) = next.held {
            out.push(CommandEvent::release(old, timestamp_ms));
        }
        if let Some(new) = wanted {
            out.push(CommandEvent::press(new, timestamp_ms));
        }
        next.held = wanted;
        next.pending_candidate = None;
        next.pending_count = 0;
    }
    next
}

/// Owned wrapper around [`step`] for callers that keep one filter per session.
#[derive(Debug, Clone, Default)]
pub struct TemporalFilter {
    cfg: FilterConfig,
    state: DirectionState,
}

impl TemporalFilter {
    pub fn new(cfg: FilterConfig) -> Self {
        Self { cfg, state: DirectionState::neutral() }
    }

    pub fn state(&self) -> &DirectionState {
        &self.state
    }

    pub fn held(&self) -> Option<Direction> {
        self.state.held
    }

    pub fn config(&self) -> &FilterConfig {
        &self.cfg
    }

    pub fn push(&mut self, m: &GestureMeasurement, timestamp_ms: u64, out: &mut Vec<CommandEvent>) {
        self.state = step(&self.state, m, timestamp_ms, &self.cfg, out);
    }

    pub fn reset(&mut self) {
        self.state = self.state.reset();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn valid(tilt: f64) -> GestureMeasurement {
        GestureMeasurement { tilt_deg: tilt, extension_deg: 180.0, valid: true }
    }

    fn run(filter: &mut TemporalFilter, ms: &[GestureMeasurement]) -> Vec<Vec<CommandEvent>> {
        ms.iter()
            .enumerate()
            .map(|(i, m)| {
                let mut out = Vec::new();
                filter.push(m, i as u64, &mut out);
                out
            })
            .collect()
    }

    fn holding_right() -> TemporalFilter {
        let mut f = TemporalFilter::new(FilterConfig::default());
        run(&mut f, &[valid(25.0); 3]);
        assert_eq!(f.held(), Some(Direction::Right));
        f
    }

    #[test]
    fn press_after_debounce() {
        let mut f = TemporalFilter::new(FilterConfig::default());
        let evs = run(&mut f, &[valid(25.0); 3]);
        assert!(evs[0].is_empty() && evs[1].is_empty());
        assert_eq!(evs[2], vec![CommandEvent::press(Direction::Right, 2)]);
        assert_eq!(f.held(), Some(Direction::Right));
    }

    #[test]
    fn hysteresis_band_sustains() {
        let mut f = holding_right();
        let evs = run(&mut f, &[valid(15.0)]);
        assert!(evs[0].is_empty());
        assert_eq!(f.held(), Some(Direction::Right));
        assert_eq!(f.state().pending_count, 0);
    }

    #[test]
    fn release_below_exit() {
        let mut f = holding_right();
        let evs = run(&mut f, &[valid(5.0); 3]);
        assert!(evs[0].is_empty() && evs[1].is_empty());
        assert_eq!(evs[2], vec![CommandEvent::release(Direction::Right, 2)]);
        assert_eq!(f.held(), None);
    }

    #[test]
    fn no_hand_release() {
        let mut f = holding_right();
        let evs = run(&mut f, &[GestureMeasurement::INVALID; 5]);
        assert!(evs[..4].iter().all(Vec::is_empty));
        assert_eq!(evs[4], vec![CommandEvent::release(Direction::Right, 4)]);
        assert_eq!(*f.state(), DirectionState::neutral());
    }

    #[test]
    fn invalid_frames_interleaved_do_not_break_debounce() {
        let mut f = TemporalFilter::new(FilterConfig::default());
        let seq = [valid(25.0), GestureMeasurement::INVALID, valid(25.0), GestureMeasurement::INVALID, valid(25.0)];
        let evs: Vec<_> = run(&mut f, &seq).into_iter().flatten().collect();
        assert_eq!(evs, vec![CommandEvent::press(Direction::Right, 4)]);
    }

    #[test]
    fn direct_reversal_is_release_then_press() {
        let mut f = holding_right();
        let evs = run(&mut f, &[valid(-30.0); 3]);
        assert_eq!(evs[2], vec![CommandEvent::release(Direction::Right, 2), CommandEvent::press(Direction::Left, 2)]);
        assert_eq!(f.held(), Some(Direction::Left));
    }

    #[test]
    fn interrupted_candidate_restarts_count() {
        let mut f = TemporalFilter::new(FilterConfig::default());
        let evs: Vec<_> = run(&mut f, &[valid(25.0), valid(25.0), valid(0.0), valid(25.0), valid(25.0)])
            .into_iter()
            .flatten()
            .collect();
        assert!(evs.is_empty());
        assert_eq!(f.state().pending_count, 2);
    }

    #[test]
    fn reset_is_idempotent() {
        let f = holding_right();
        let r = f.state().reset();
        assert_eq!(r, DirectionState::neutral());
        assert_eq!(r.reset(), r);
        assert_eq!(DirectionState::neutral().reset(), DirectionState::neutral());
    }

    #[test]
    fn config_validation() {
        assert!(FilterConfig::default().validate().is_ok());
        for bad in [
            FilterConfig { exit_deg: 20.0, ..Default::default() },
            FilterConfig { exit_deg: 0.0, ..Default::default() },
            FilterConfig { enter_deg: 90.0, ..Default::default() },
            FilterConfig { debounce_frames: 0, ..Default::default() },
            FilterConfig { no_hand_release_frames: 0, ..Default::default() },
        ] {
            assert!(bad.validate().is_err(), "{bad:?}");
        }
    }
}
