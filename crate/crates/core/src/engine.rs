//! The per-session pipeline: frames → mirror → measure → filter → game, on a
//! fixed timestep.
//!
//! Frames are queued as they arrive and drained in arrival order at the next
//! tick boundary, before that tick's simulation step. A tick that drains no
//! frame steps the filter once with an invalid measurement so a stalled client
//! still releases its held direction.

use std::collections::VecDeque;
use std::io::BufRead;

use crate::config::{ConfigError, SessionConfig};
use crate::filter::{CommandEvent, Direction, TemporalFilter};
use crate::game::GameState;
use crate::gesture::{measure, GestureMeasurement};
use crate::landmark::{mirror_frame, LandmarkFrame};
use crate::trace::{Snapshot, TraceError, TraceHeader, TraceLine, TraceRecord, TRACE_VERSION};

/// Tick a timestamp belongs to: `round(t * tick_hz / 1000)`.
pub fn tick_for_ms(t_ms: u64, tick_hz: u32) -> u64 {
    let hz = u128::from(tick_hz);
    ((u128::from(t_ms) * hz * 2 + 1000) / 2000) as u64
}

/// Millisecond timestamp of a tick, rounded so that `tick_for_ms` inverts it.
pub fn ms_for_tick(tick: u64, tick_hz: u32) -> u64 {
    let hz = u128::from(tick_hz);
    ((u128::from(tick) * 2000 + hz) / (2 * hz)) as u64
}

/// What happened to one real (non-synthetic) frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameOutcome {
    pub timestamp_ms: u64,
    pub measurement: GestureMeasurement,
    /// Held direction after this frame was filtered.
    pub held: Option<Direction>,
}

#[derive(Debug, Default, Clone)]
pub struct TickOutput {
    pub lines: Vec<TraceLine>,
    pub frames: Vec<FrameOutcome>,
    pub snapshot: Option<Snapshot>,
}

impl TickOutput {
    pub fn clear(&mut self) {
        self.lines.clear();
        self.frames.clear();
        self.snapshot = None;
    }
}

pub struct Engine {
    cfg: SessionConfig,
    filter: TemporalFilter,
    game: GameState,
    session_tick: u64,
    queue: VecDeque<LandmarkFrame>,
    restamp_frames: bool,
    events: Vec<CommandEvent>,
}

impl Engine {
    pub fn new(cfg: &SessionConfig) -> Result<Self, ConfigError> {
        cfg.validate()?;
        let game = GameState::new(&cfg.game).map_err(|e| ConfigError::Invalid(e.0))?;
        Ok(Self {
            filter: TemporalFilter::new(cfg.filter),
            game,
            cfg: cfg.clone(),
            session_tick: 0,
            queue: VecDeque::new(),
            restamp_frames: false,
            events: Vec::new(),
        })
    }

    /// Live sessions stamp each recorded frame with the time of the tick that
    /// consumed it, so the trace replays onto the same ticks.
    pub fn with_tick_stamping(mut self) -> Self {
        self.restamp_frames = true;
        self
    }

    pub fn config(&self) -> &SessionConfig {
        &self.cfg
    }

    pub fn game(&self) -> &GameState {
        &self.game
    }

    pub fn game_mut(&mut self) -> &mut GameState {
        &mut self.game
    }

    pub fn held(&self) -> Option<Direction> {
        self.filter.held()
    }

    pub fn session_tick(&self) -> u64 {
        self.session_tick
    }

    pub fn header(&self) -> TraceHeader {
        TraceHeader { version: TRACE_VERSION, config: self.cfg.clone() }
    }

    pub fn snapshot(&self) -> Snapshot {
        Snapshot::capture(self.session_tick, &self.game, &self.cfg.game, self.filter.held())
    }

    /// The tick-0 snapshot line emitted before any simulation step.
    pub fn initial_line(&self) -> TraceLine {
        TraceLine::Snapshot(self.snapshot())
    }

    pub fn enqueue(&mut self, frame: LandmarkFrame) {
        self.queue.push_back(frame);
    }

    pub fn queued(&self) -> usize {
        self.queue.len()
    }

    /// Runs one frame through measure → filter → game immediately, outside the
    /// tick schedule. Returns the number of command events it produced.
    pub fn process_frame(&mut self, frame: &LandmarkFrame, out: &mut TickOutput) -> usize {
        let m = if self.cfg.mirror_input {
            measure(&mirror_frame(frame), &self.cfg.classifier)
        } else {
            measure(frame, &self.cfg.classifier)
        };
        // the raw input is recorded; mirroring is reapplied on replay
        out.lines.push(TraceLine::Frame(frame.clone()));
        self.events.clear();
        self.filter.push(&m, frame.timestamp_ms, &mut self.events);
        for ev in &self.events {
            self.game.apply_command(ev, &self.cfg.game);
            out.lines.push(TraceLine::Event(*ev));
        }
        out.frames.push(FrameOutcome { timestamp_ms: frame.timestamp_ms, measurement: m, held: self.filter.held() });
        self.events.len()
    }

    /// Advances one tick: drains queued frames, then steps the game.
    pub fn step_tick(&mut self, out: &mut TickOutput) {
        self.session_tick += 1;
        let tick_ms = ms_for_tick(self.session_tick, self.cfg.game.tick_hz);
        if self.queue.is_empty() {
            self.events.clear();
            self.filter.push(&GestureMeasurement::INVALID, tick_ms, &mut self.events);
            for ev in &self.events {
                self.game.apply_command(ev, &self.cfg.game);
                out.lines.push(TraceLine::Event(*ev));
            }
        }
        while let Some(mut frame) = self.queue.pop_front() {
            if self.restamp_frames {
                frame.timestamp_ms = tick_ms;
            }
            self.process_frame(&frame, out);
        }
        self.game.tick(&self.cfg.game);
        if self.session_tick.is_multiple_of(u64::from(self.cfg.snapshot_decimation)) {
            let snap = self.snapshot();
            out.lines.push(TraceLine::Snapshot(snap.clone()));
            out.snapshot = Some(snap);
        }
    }
}

/// Output of a replay: the regenerated trace plus per-frame outcomes.
#[derive(Debug, Clone, Default)]
pub struct GameLog {
    pub record: TraceRecord,
    pub frames: Vec<FrameOutcome>,
}

impl GameLog {
    pub fn events(&self) -> Vec<CommandEvent> {
        self.record.events().copied().collect()
    }

    pub fn snapshots(&self) -> Vec<Snapshot> {
        self.record.snapshots().cloned().collect()
    }
}

/// Feeds a trace's frames through a fresh engine. Frames land on
/// `tick_for_ms(t)` (tick-0 frames fold into tick 1); the run continues to the
/// last tick named by any frame, event or snapshot line. Event and snapshot lines in
/// the input are ignored and regenerated; label lines are kept next to the
/// frame with the same timestamp.
pub fn replay_record(trace: &TraceRecord, cfg: &SessionConfig) -> Result<GameLog, ConfigError> {
    let mut engine = Engine::new(cfg)?;
    let hz = cfg.game.tick_hz;

    let mut frames: VecDeque<&LandmarkFrame> = trace.frames().collect();
    let mut labels: VecDeque<(u64, _)> = trace.labels().collect();
    let last_tick = trace
        .frames()
        .map(|f| tick_for_ms(f.timestamp_ms, hz).max(1))
        .chain(trace.events().map(|e| tick_for_ms(e.timestamp_ms, hz)))
        .chain(trace.snapshots().map(|s| s.tick))
        .max()
        .unwrap_or(0);

    let mut log = GameLog {
        record: TraceRecord { header: Some(engine.header()), lines: vec![engine.initial_line()] },
        frames: Vec::new(),
    };
    let mut out = TickOutput::default();
    while engine.session_tick() < last_tick {
        let next = engine.session_tick() + 1;
        while let Some(f) = frames.front() {
            if tick_for_ms(f.timestamp_ms, hz).max(1) > next {
                break;
            }
            engine.enqueue((*frames.pop_front().unwrap()).clone());
        }
        out.clear();
        engine.step_tick(&mut out);
        for line in out.lines.drain(..) {
            let label_ts = match &line {
                TraceLine::Frame(f) => Some(f.timestamp_ms),
                _ => None,
            };
            log.record.lines.push(line);
            if let Some(ts) = label_ts {
                while labels.front().is_some_and(|(t, _)| *t < ts) {
                    labels.pop_front();
                }
                while let Some(&(t, label)) = labels.front() {
                    if t != ts {
                        break;
                    }
                    labels.pop_front();
                    log.record.lines.push(TraceLine::Label { timestamp_ms: t, label });
                }
            }
        }
        log.frames.append(&mut out.frames);
    }
    Ok(log)
}

#[derive(Debug, thiserror::Error)]
pub enum ReplayError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("malformed trace: {0}")]
    Trace(#[from] TraceError),
}

pub fn replay_reader<R: BufRead>(reader: R, cfg: &SessionConfig) -> Result<GameLog, ReplayError> {
    let rec = TraceRecord::read(reader)?;
    Ok(replay_record(&rec, cfg)?)
}
