//! Websocket session server, replay and evaluation front ends for
//! `fingersteer-core`.

pub mod report;
pub mod session;

pub use session::{run_session, Session, SessionError, SessionStats, SimLoop};
