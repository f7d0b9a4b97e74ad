//! Offline scoring of the classifier + filter against labeled traces, and the
//! scripted acceptance scenarios for gesture detection, car movement and the
//! crash/restart cycle.

use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use thiserror::Error;

use crate::config::{ConfigError, SessionConfig};
use crate::engine::{ms_for_tick, replay_record, Engine, TickOutput};
use crate::filter::{Direction, EventKind, FilterConfig};
use crate::game::Obstacle;
use crate::synth;
use crate::trace::{GestureClass, StatusTag, TraceLine, TraceRecord};

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("trace has no label lines")]
    NoLabels,
    #[error("grid point {index}: {msg}")]
    InvalidGrid { index: usize, msg: String },
    #[error(transparent)]
    Config(#[from] ConfigError),
}

/// One change of the expected held direction and how long the filter took
/// to follow it, counted in frames including the frame where the label changed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransitionLatency {
    pub frame_index: usize,
    pub from: GestureClass,
    pub to: GestureClass,
    /// `None` when the filter never followed before the next transition.
    pub latency_frames: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalMetrics {
    pub labeled_frames: u64,
    pub per_frame_accuracy: f64,
    /// Rows are labels, columns predictions, both in left/right/neutral/none order.
    pub confusion: [[u64; 4]; 4],
    pub onset_latency_frames: Vec<TransitionLatency>,
    pub event_edit_distance: usize,
    pub expected_events: usize,
    pub emitted_events: usize,
}

impl EvalMetrics {
    pub fn mean_latency(&self) -> Option<f64> {
        let hits: Vec<u32> = self.onset_latency_frames.iter().filter_map(|t| t.latency_frames).collect();
        if hits.is_empty() {
            None
        } else {
            Some(hits.iter().map(|&l| f64::from(l)).sum::<f64>() / hits.len() as f64)
        }
    }

    pub fn missed_transitions(&self) -> usize {
        self.onset_latency_frames.iter().filter(|t| t.latency_frames.is_none()).count()
    }
}

type EventKey = (EventKind, Direction);

fn edges(from: Option<Direction>, to: Option<Direction>, out: &mut Vec<EventKey>) {
    if from == to {
        return;
    }
    if let Some(d) = from {
        out.push((EventKind::Release, d));
    }
    if let Some(d) = to {
        out.push((EventKind::Press, d));
    }
}

/// Levenshtein distance with unit costs.
pub fn edit_distance<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0; b.len() + 1];
    for (i, x) in a.iter().enumerate() {
        cur[0] = i + 1;
        for (j, y) in b.iter().enumerate() {
            let sub = prev[j] + usize::from(x != y);
            cur[j + 1] = sub.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// The class a frame is scored as: the held direction if any, otherwise
/// neutral for a usable hand and none for an unusable one.
pub fn predicted_class(held: Option<Direction>, valid: bool) -> GestureClass {
    match held {
        Some(d) => d.into(),
        None if valid => GestureClass::Neutral,
        None => GestureClass::None,
    }
}

pub fn evaluate_trace(trace: &TraceRecord, cfg: &SessionConfig) -> Result<EvalMetrics, EvalError> {
    let labels: HashMap<u64, GestureClass> = trace.labels().collect();
    if labels.is_empty() {
        return Err(EvalError::NoLabels);
    }
    let log = replay_record(trace, cfg)?;

    let mut confusion = [[0u64; 4]; 4];
    let mut expected = Vec::new();
    let mut transitions = Vec::new();
    let mut expected_held: Option<Direction> = None;
    let mut last_label: Option<GestureClass> = None;

    for (i, outcome) in log.frames.iter().enumerate() {
        let Some(&label) = labels.get(&outcome.timestamp_ms) else {
            continue;
        };
        let predicted = predicted_class(outcome.held, outcome.measurement.valid);
        confusion[label.index()][predicted.index()] += 1;

        let want = label.held();
        if want != expected_held {
            edges(expected_held, want, &mut expected);
            transitions.push(TransitionLatency {
                frame_index: i,
                from: last_label.unwrap_or(GestureClass::Neutral),
                to: label,
                latency_frames: None,
            });
            expected_held = want;
        }
        last_label = Some(label);
    }

    // latency: frames until the filter holds what the label asks for
    for k in 0..transitions.len() {
        let start = transitions[k].frame_index;
        let end = transitions.get(k + 1).map_or(log.frames.len(), |t| t.frame_index);
        let want = transitions[k].to.held();
        transitions[k].latency_frames =
            log.frames[start..end].iter().position(|o| o.held == want).map(|p| p as u32 + 1);
    }

    let produced: Vec<EventKey> = log.events().iter().map(|e| (e.kind, e.direction)).collect();
    let total: u64 = confusion.iter().flatten().sum();
    let correct: u64 = (0..4).map(|i| confusion[i][i]).sum();
    Ok(EvalMetrics {
        labeled_frames: total,
        per_frame_accuracy: if total == 0 { 0.0 } else { correct as f64 / total as f64 },
        confusion,
        onset_latency_frames: transitions,
        event_edit_distance: edit_distance(&expected, &produced),
        expected_events: expected.len(),
        emitted_events: produced.len(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridPoint {
    pub enter_deg: f64,
    pub exit_deg: f64,
    pub debounce_frames: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub point: GridPoint,
    pub metrics: EvalMetrics,
}

/// Evaluates the trace once per grid point, overriding the filter thresholds.
pub fn sweep_thresholds(
    trace: &TraceRecord,
    cfg: &SessionConfig,
    grid: &[GridPoint],
) -> Result<Vec<SweepRow>, EvalError> {
    let mut rows = Vec::with_capacity(grid.len());
    for (index, point) in grid.iter().enumerate() {
        let filter = FilterConfig {
            enter_deg: point.enter_deg,
            exit_deg: point.exit_deg,
            debounce_frames: point.debounce_frames,
            ..cfg.filter
        };
        filter.validate().map_err(|msg| EvalError::InvalidGrid { index, msg })?;
        let point_cfg = SessionConfig { filter, ..cfg.clone() };
        rows.push(SweepRow { point: *point, metrics: evaluate_trace(trace, &point_cfg)? });
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UatRow {
    pub event: &'static str,
    pub expected: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UatReport {
    pub rows: Vec<UatRow>,
}

impl UatReport {
    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }
}

pub fn uat_suite(cfg: &SessionConfig) -> Result<UatReport, EvalError> {
    let start_lane = cfg.game.lanes / 2;
    Ok(UatReport { rows: vec![detect_hand_gesture(cfg)?, car_movement(cfg, start_lane)?, game_mechanics(cfg)?] })
}

/// Drives an engine with one frame per tick (`None` = hand absent) and
/// collects the held direction after every tick plus all output lines.
struct Script {
    engine: Engine,
    out: TickOutput,
    held: Vec<Option<Direction>>,
}

impl Script {
    fn new(cfg: &SessionConfig) -> Result<Self, EvalError> {
        Ok(Self { engine: Engine::new(cfg)?, out: TickOutput::default(), held: Vec::new() })
    }

    fn feed(&mut self, tilt: Option<f64>, n: usize) {
        let cfg = self.engine.config().clone();
        for _ in 0..n {
            let t = ms_for_tick(self.engine.session_tick() + 1, cfg.game.tick_hz);
            let frame = match tilt {
                Some(deg) => synth::player_frame(t, deg, &cfg),
                None => crate::landmark::LandmarkFrame::empty(t),
            };
            self.engine.enqueue(frame);
            self.engine.step_tick(&mut self.out);
            self.held.push(self.engine.held());
        }
    }

    fn presses(&self) -> Vec<Direction> {
        self.out
            .lines
            .iter()
            .filter_map(|l| match l {
                TraceLine::Event(e) if e.kind == EventKind::Press => Some(e.direction),
                _ => None,
            })
            .collect()
    }
}

fn hold_frames(cfg: &SessionConfig) -> usize {
    cfg.filter.debounce_frames as usize + 5
}

fn detect_hand_gesture(cfg: &SessionConfig) -> Result<UatRow, EvalError> {
    let hold = hold_frames(cfg);
    let left = synth::class_tilt(GestureClass::Left, cfg);
    let right = synth::class_tilt(GestureClass::Right, cfg);
    let mut s = Script::new(cfg)?;
    s.feed(Some(0.0), hold);
    let neutral_ok = s.held.iter().all(Option::is_none);
    s.feed(left, hold);
    let left_ok = s.held.last() == Some(&Some(Direction::Left));
    s.feed(Some(0.0), hold);
    let released_ok = s.held.last() == Some(&None);
    s.feed(right, hold);
    let right_ok = s.held.last() == Some(&Some(Direction::Right));
    let presses = s.presses();
    let passed = neutral_ok && left_ok && released_ok && right_ok && presses == [Direction::Left, Direction::Right];
    Ok(UatRow {
        event: "Detect Hand Gesture",
        expected: "Hand gesture will be recognized and work smoothly",
        passed,
        detail: format!(
            "neutral idle {neutral_ok}, left held {left_ok}, released {released_ok}, right held {right_ok}, presses {presses:?}"
        ),
    })
}

/// Left hold, neutral, right hold starting from `start_lane`; passes when each
/// press moves the car one lane (clamped at the edges).
pub fn car_movement(cfg: &SessionConfig, start_lane: u32) -> Result<UatRow, EvalError> {
    let hold = hold_frames(cfg);
    let lanes = cfg.game.lanes;
    let mut s = Script::new(cfg)?;
    s.engine.game_mut().car_lane = start_lane.min(lanes - 1);
    let start = s.engine.game().car_lane;

    s.feed(synth::class_tilt(GestureClass::Left, cfg), hold);
    let after_left = s.engine.game().car_lane;
    s.feed(Some(0.0), hold);
    s.feed(synth::class_tilt(GestureClass::Right, cfg), hold);
    let after_right = s.engine.game().car_lane;

    let want_left = start.saturating_sub(1);
    let want_right = (want_left + 1).min(lanes - 1);
    let presses = s.presses();
    let running = s.engine.game().status.is_running();
    let passed = running
        && presses == [Direction::Left, Direction::Right]
        && after_left == want_left
        && after_right == want_right;
    Ok(UatRow {
        event: "Car Movement",
        expected: "Swiping hand towards a direction will work as a command to move the vehicle",
        passed,
        detail: format!(
            "lane {start} -> {after_left} (want {want_left}) -> {after_right} (want {want_right}), presses {presses:?}"
        ),
    })
}

fn game_mechanics(cfg: &SessionConfig) -> Result<UatRow, EvalError> {
    let gcfg = &cfg.game;
    let mut s = Script::new(cfg)?;
    let started = s.engine.game().status.is_running();
    s.feed(Some(0.0), 2);

    // head-on: touching the car band now, overlapping after one step
    let lane = s.engine.game().car_lane;
    let game = s.engine.game_mut();
    let id = game.next_obstacle_id;
    game.obstacles.push(Obstacle { id, lane, y: gcfg.car_y - gcfg.obstacle_height, passed: false });
    game.next_obstacle_id += 1;
    game.score = 3;

    let mut crash_tick = None;
    let mut restart_tick = None;
    let mut restarted_clean = false;
    let budget = u64::from(gcfg.auto_restart_delay_ticks) + 10;
    for _ in 0..budget {
        s.feed(Some(0.0), 1);
        let snap = s.engine.snapshot();
        match (crash_tick, snap.status) {
            (None, StatusTag::Crashed) => crash_tick = Some(snap.tick),
            (Some(_), StatusTag::Running) if restart_tick.is_none() => {
                restart_tick = Some(snap.tick);
                restarted_clean = snap.score == 0 && snap.best == 3 && snap.obstacles.is_empty();
            }
            _ => {}
        }
    }
    let delay = u64::from(gcfg.auto_restart_delay_ticks).max(1);
    let gap = crash_tick.zip(restart_tick).map(|(c, r)| r - c);
    let passed = started && crash_tick.is_some() && gap == Some(delay) && restarted_clean;
    Ok(UatRow {
        event: "Game Mechanics",
        expected: "Game will start and will end when the vehicle crash with other vehicles",
        passed,
        detail: format!(
            "crash at tick {crash_tick:?}, restart at {restart_tick:?}, gap {gap:?} (want {delay}), score reset with best kept {restarted_clean}"
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use GestureClass::{Left, Neutral, Right};

    fn cfg() -> SessionConfig {
        SessionConfig::default()
    }

    #[test]
    fn edit_distance_basics() {
        assert_eq!(edit_distance::<u8>(&[], &[]), 0);
        assert_eq!(edit_distance(b"kitten", b"sitting"), 3);
        assert_eq!(edit_distance(b"abc", b""), 3);
        assert_eq!(edit_distance(b"flaw", b"lawn"), 2);
    }

    #[test]
    fn no_labels_is_an_error() {
        let trace = synth::tilt_trace(&[Some(0.0); 4], None, &cfg());
        assert!(matches!(evaluate_trace(&trace, &cfg()), Err(EvalError::NoLabels)));
    }

    #[test]
    fn self_labeled_trace_scores_perfectly() {
        let c = cfg();
        let mut tilts = vec![Some(0.0); 5];
        tilts.extend(vec![Some(-40.0); 8]);
        tilts.extend(vec![Some(15.0); 3]);
        tilts.extend(vec![None; 8]);
        tilts.extend(vec![Some(40.0); 8]);
        let unlabeled = synth::tilt_trace(&tilts, None, &c);
        let log = replay_record(&unlabeled, &c).unwrap();
        let labels: Vec<GestureClass> =
            log.frames.iter().map(|o| predicted_class(o.held, o.measurement.valid)).collect();
        let trace = synth::tilt_trace(&tilts, Some(&labels), &c);
        let m = evaluate_trace(&trace, &c).unwrap();
        assert_eq!(m.per_frame_accuracy, 1.0);
        assert_eq!(m.event_edit_distance, 0);
        assert_eq!(m.labeled_frames, tilts.len() as u64);
        assert!(m.onset_latency_frames.iter().all(|t| t.latency_frames == Some(1)));
    }

    #[test]
    fn opposite_labels_score_zero() {
        let c = cfg();
        let tilts = vec![Some(40.0); 20];
        let labels = vec![Left; 20];
        let m = evaluate_trace(&synth::tilt_trace(&tilts, Some(&labels), &c), &c).unwrap();
        assert_eq!(m.per_frame_accuracy, 0.0);
        let row_sums: Vec<u64> = m.confusion.iter().map(|r| r.iter().sum()).collect();
        assert_eq!(row_sums, vec![20, 0, 0, 0]);
    }

    #[test]
    fn step_trace_latency_equals_debounce() {
        for debounce in [1, 2, 3, 6] {
            let mut c = cfg();
            c.filter.debounce_frames = debounce;
            let trace = synth::labeled_trace(
                &[(Neutral, 10), (Right, 12), (Neutral, 12), (Left, 12), (Right, 12), (Neutral, 12)],
                &c,
            );
            let m = evaluate_trace(&trace, &c).unwrap();
            assert_eq!(m.onset_latency_frames.len(), 5);
            for t in &m.onset_latency_frames {
                assert_eq!(t.latency_frames, Some(debounce), "{t:?}");
            }
            assert_eq!(m.event_edit_distance, 0);
            // every transition costs debounce - 1 lagging frames
            let expected_acc = 1.0 - 5.0 * f64::from(debounce - 1) / 70.0;
            assert!((m.per_frame_accuracy - expected_acc).abs() < 1e-12);
        }
    }

    #[test]
    fn sweep_matches_single_evaluation() {
        let c = cfg();
        let trace = synth::labeled_trace(&[(Neutral, 5), (Left, 10), (Neutral, 10)], &c);
        assert!(sweep_thresholds(&trace, &c, &[]).unwrap().is_empty());
        let point = GridPoint { enter_deg: 20.0, exit_deg: 12.0, debounce_frames: 3 };
        let rows = sweep_thresholds(&trace, &c, &[point]).unwrap();
        assert_eq!(rows[0].metrics, evaluate_trace(&trace, &c).unwrap());
        let bad = GridPoint { enter_deg: 10.0, exit_deg: 12.0, debounce_frames: 3 };
        assert!(matches!(sweep_thresholds(&trace, &c, &[point, bad]), Err(EvalError::InvalidGrid { index: 1, .. })));
    }

    #[test]
    fn uat_default_config_passes() {
        let report = uat_suite(&cfg()).unwrap();
        assert_eq!(report.rows.len(), 3);
        for row in &report.rows {
            assert!(row.passed, "{}: {}", row.event, row.detail);
        }
    }

    #[test]
    fn uat_zero_restart_delay() {
        let mut c = cfg();
        c.game.auto_restart_delay_ticks = 0;
        let report = uat_suite(&c).unwrap();
        assert!(report.rows[2].passed, "{}", report.rows[2].detail);
        assert!(report.rows[2].detail.contains("gap Some(1)"));
    }

    #[test]
    fn uat_car_movement_clamps_at_lane_zero() {
        let row = car_movement(&cfg(), 0).unwrap();
        assert!(row.passed, "{}", row.detail);
        assert!(row.detail.starts_with("lane 0 -> 0"));
    }

    #[test]
    fn uat_unmirrored_and_wide_track() {
        let mut c = cfg();
        c.mirror_input = false;
        c.game.lanes = 7;
        c.filter.debounce_frames = 5;
        assert!(uat_suite(&c).unwrap().all_passed());
    }
}
