//! Browser bindings for the demo page: measure a synthetic hand, run a tilt
//! series through the command filter, and drive a live game from a tilt
//! control. Everything here is plain Rust and also runs natively.

use fingersteer_core::filter::{label, step, DirectionState};
use fingersteer_core::gesture::{measure, ClassifierConfig, GestureMeasurement};
use fingersteer_core::landmark::LandmarkFrame;
use fingersteer_core::synth::{hand_with_bend, player_frame};
use fingersteer_core::trace::TraceLine;
use fingersteer_core::{Direction, Engine, FilterConfig, SessionConfig, TickOutput};
use wasm_bindgen::prelude::*;

fn dir_str(d: Option<Direction>) -> &'static str {
    d.map_or("none", Direction::as_str)
}

/// Angles of one synthetic hand and the direction a neutral filter would
/// start debouncing toward.
#[wasm_bindgen]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Angles {
    pub tilt_deg: f64,
    pub extension_deg: f64,
    pub valid: bool,
    candidate: Option<Direction>,
}

#[wasm_bindgen]
impl Angles {
    /// "left", "right" or "none".
    #[wasm_bindgen(getter)]
    pub fn candidate(&self) -> String {
        dir_str(self.candidate).to_string()
    }
}

/// Measures a pointing hand whose index finger is tilted `tilt_deg` in
/// image space and bent to `extension_deg` at the knuckle.
#[wasm_bindgen]
pub fn classify(tilt_deg: f64, extension_deg: f64) -> Angles {
    let frame = LandmarkFrame::with_hand(0, &hand_with_bend(tilt_deg, extension_deg));
    let m = frame.map_or(GestureMeasurement::INVALID, |f| measure(&f, &ClassifierConfig::default()));
    let candidate = if m.valid { label(None, m.tilt_deg, &FilterConfig::default()) } else { None };
    Angles { tilt_deg: m.tilt_deg, extension_deg: m.extension_deg, valid: m.valid, candidate }
}

#[wasm_bindgen]
#[derive(Debug, Clone, PartialEq)]
pub struct FilterRun {
    events: Vec<String>,
    held: String,
    error: String,
}

#[wasm_bindgen]
impl FilterRun {
    /// Event lines, one JSON object per line.
    #[wasm_bindgen(getter)]
    pub fn events(&self) -> String {
        self.events.join("\n")
    }

    #[wasm_bindgen(getter)]
    pub fn event_count(&self) -> usize {
        self.events.len()
    }

    /// Held direction after each frame: `L`, `R` or `.`.
    #[wasm_bindgen(getter)]
    pub fn held(&self) -> String {
        self.held.clone()
    }

    /// Empty unless the thresholds were rejected.
    #[wasm_bindgen(getter)]
    pub fn error(&self) -> String {
        self.error.clone()
    }
}

/// Runs a series of tilt readings (NaN = no hand) through the filter, one
/// frame per millisecond timestamp.
#[wasm_bindgen]
pub fn filter_events(tilts: &[f64], enter_deg: f64, exit_deg: f64, debounce_frames: u32) -> FilterRun {
    let cfg = FilterConfig { enter_deg, exit_deg, debounce_frames, ..Default::default() };
    if let Err(error) = cfg.validate() {
        return FilterRun { events: Vec::new(), held: String::new(), error };
    }
    let mut state = DirectionState::neutral();
    let mut out = Vec::new();
    let mut held = String::with_capacity(tilts.len());
    for (i, &tilt) in tilts.iter().enumerate() {
        let m = if tilt.is_finite() {
            GestureMeasurement { tilt_deg: tilt, extension_deg: 180.0, valid: true }
        } else {
            GestureMeasurement::INVALID
        };
        state = step(&state, &m, i as u64, &cfg, &mut out);
        held.push(match state.held {
            Some(Direction::Left) => 'L',
            Some(Direction::Right) => 'R',
            None => '.',
        });
    }
    let events = out.into_iter().map(|e| TraceLine::Event(e).to_line()).collect();
    FilterRun { events, held, error: String::new() }
}

/// A full session engine ticked by the page, fed one synthetic frame per
/// tick from the player's tilt control.
#[wasm_bindgen]
pub struct Demo {
    engine: Engine,
    out: TickOutput,
}

#[wasm_bindgen]
impl Demo {
    /// `lanes` is clamped to the supported range.
    #[wasm_bindgen(constructor)]
    pub fn new(seed: u32, lanes: u32) -> Demo {
        let mut cfg = SessionConfig::default();
        cfg.game.rng_seed = u64::from(seed);
        cfg.game.lanes = lanes.clamp(2, 7);
        let engine = Engine::new(&cfg).expect("default config with clamped lanes is valid");
        Demo { engine, out: TickOutput::default() }
    }

    /// Advances one tick with the player tilting `tilt_deg` (NaN = hand out
    /// of view) and returns the snapshot as a JSON line.
    pub fn step(&mut self, tilt_deg: f64) -> String {
        let cfg = self.engine.config();
        let t = fingersteer_core::engine::ms_for_tick(self.engine.session_tick() + 1, cfg.game.tick_hz);
        let frame = if tilt_deg.is_finite() { player_frame(t, tilt_deg, cfg) } else { LandmarkFrame::empty(t) };
        self.engine.enqueue(frame);
        self.out.clear();
        self.engine.step_tick(&mut self.out);
        self.snapshot()
    }

    pub fn snapshot(&self) -> String {
        self.engine.snapshot().to_line()
    }

    #[wasm_bindgen(getter)]
    pub fn tick(&self) -> f64 {
        self.engine.session_tick() as f64
    }

    #[wasm_bindgen(getter)]
    pub fn tick_hz(&self) -> u32 {
        self.engine.config().game.tick_hz
    }
}
