//! Gesture-steered lane dodging: hand landmark frames in, debounced
//! left/right commands and deterministic game state out.

pub mod config;
pub mod engine;
pub mod eval;
pub mod filter;
pub mod game;
pub mod gesture;
pub mod landmark;
pub mod synth;
pub mod trace;

pub use config::{ConfigError, SessionConfig};
pub use engine::{replay_reader, replay_record, Engine, GameLog, ReplayError, TickOutput};
pub use filter::{CommandEvent, Direction, DirectionState, EventKind, FilterConfig, TemporalFilter};
pub use game::{GameConfig, GameState, Obstacle, RunStatus};
pub use gesture::{measure, tilt_angle, vertex_angle, ClassifierConfig, GestureMeasurement};
pub use landmark::{decode_frame, encode_frame, mirror_frame, LandmarkFrame, LandmarkIndex, Point2D};
pub use trace::{GestureClass, Snapshot, TraceLine, TraceRecord};
