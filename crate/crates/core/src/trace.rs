//! Newline-delimited trace records: header, frames, labels, command events
//! and state snapshots. The same frame and snapshot encodings are used on the
//! wire.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::fmt;
use std::io::{self, BufRead};
use thiserror::Error;

use crate::config::SessionConfig;
use crate::filter::{CommandEvent, Direction, EventKind};
use crate::game::{GameConfig, GameState, RunStatus};
use crate::landmark::{encode_frame, frame_from_value, FrameError, LandmarkFrame};

pub const TRACE_VERSION: u32 = 1;

/// Ground-truth class for a frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GestureClass {
    Left,
    Right,
    Neutral,
    None,
}

impl GestureClass {
    pub const ALL: [GestureClass; 4] = [Self::Left, Self::Right, Self::Neutral, Self::None];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Left => "left",
            Self::Right => "right",
            Self::Neutral => "neutral",
            Self::None => "none",
        }
    }

    /// The direction a filter should be holding for this class.
    pub fn held(self) -> Option<Direction> {
        match self {
            Self::Left => Some(Direction::Left),
            Self::Right => Some(Direction::Right),
            Self::Neutral | Self::None => None,
        }
    }
}

impl From<Direction> for GestureClass {
    fn from(d: Direction) -> Self {
        match d {
            Direction::Left => Self::Left,
            Direction::Right => Self::Right,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StatusTag {
    Running,
    Crashed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CommandTag {
    Left,
    Right,
    None,
}

impl From<Option<Direction>> for CommandTag {
    fn from(d: Option<Direction>) -> Self {
        match d {
            Some(Direction::Left) => Self::Left,
            Some(Direction::Right) => Self::Right,
            None => Self::None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObstacleView {
    pub lane: u32,
    pub y: f64,
}

/// Engine to UI state message. Field order is the wire order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Snapshot {
    pub tick: u64,
    pub status: StatusTag,
    pub restart_in: u32,
    pub car_lane: u32,
    pub lanes: u32,
    pub obstacles: Vec<ObstacleView>,
    pub score: u32,
    pub best: u32,
    pub command: CommandTag,
}

impl Snapshot {
    pub fn capture(tick: u64, game: &GameState, cfg: &GameConfig, held: Option<Direction>) -> Self {
        Self {
            tick,
            status: match game.status {
                RunStatus::Running => StatusTag::Running,
                RunStatus::Crashed { .. } => StatusTag::Crashed,
            },
            restart_in: game.restart_in(),
            car_lane: game.car_lane,
            lanes: cfg.lanes,
            obstacles: game.obstacles.iter().map(|o| ObstacleView { lane: o.lane, y: o.y }).collect(),
            score: game.score,
            best: game.best_score,
            command: held.into(),
        }
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("snapshot serialization is infallible")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceHeader {
    pub version: u32,
    pub config: SessionConfig,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HeaderLine {
    header: TraceHeader,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LabelLine {
    t: u64,
    label: GestureClass,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EventLine {
    t: u64,
    event: EventKind,
    dir: Direction,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TraceLine {
    Header(Box<TraceHeader>),
    Frame(LandmarkFrame),
    Label { timestamp_ms: u64, label: GestureClass },
    Event(CommandEvent),
    Snapshot(Snapshot),
}

#[derive(Debug, Error)]
pub enum TraceError {
    #[error("line {line}: {source}")]
    Frame { line: usize, source: FrameError },
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl TraceLine {
    /// Parses one line; `line_no` is only used for error messages.
    pub fn parse(text: &str, line_no: usize) -> Result<TraceLine, TraceError> {
        let bad = |msg: String| TraceError::Malformed { line: line_no, msg };
        let value: Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
        let obj = value.as_object().ok_or_else(|| bad("expected a JSON object".into()))?;
        let line = if obj.contains_key("header") {
            let h: HeaderLine = serde_json::from_value(value).map_err(|e| bad(e.to_string()))?;
            TraceLine::Header(Box::new(h.header))
        } else if obj.contains_key("hand") {
            let f = frame_from_value(value).map_err(|source| TraceError::Frame { line: line_no, source })?;
            TraceLine::Frame(f)
        } else if obj.contains_key("label") {
            let l: LabelLine = serde_json::from_value(value).map_err(|e| bad(e.to_string()))?;
            TraceLine::Label { timestamp_ms: l.t, label: l.label }
        } else if obj.contains_key("event") {
            let e: EventLine = serde_json::from_value(value).map_err(|e| bad(e.to_string()))?;
            TraceLine::Event(CommandEvent { kind: e.event, direction: e.dir, timestamp_ms: e.t })
        } else if obj.contains_key("tick") {
            let s: Snapshot = serde_json::from_value(value).map_err(|e| bad(e.to_string()))?;
            TraceLine::Snapshot(s)
        } else {
            return Err(bad("unrecognized trace line".into()));
        };
        Ok(line)
    }

    pub fn to_line(&self) -> String {
        match self {
            TraceLine::Header(h) => json(&HeaderLine { header: (**h).clone() }),
            TraceLine::Frame(f) => encode_frame(f),
            TraceLine::Label { timestamp_ms, label } => json(&LabelLine { t: *timestamp_ms, label: *label }),
            TraceLine::Event(e) => json(&EventLine { t: e.timestamp_ms, event: e.kind, dir: e.direction }),
            TraceLine::Snapshot(s) => s.to_line(),
        }
    }

    pub fn is_event_or_snapshot(&self) -> bool {
        matches!(self, TraceLine::Event(_) | TraceLine::Snapshot(_))
    }
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("trace line serialization is infallible")
}

impl fmt::Display for TraceLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_line())
    }
}

/// A parsed trace file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TraceRecord {
    pub header: Option<TraceHeader>,
    pub lines: Vec<TraceLine>,
}

impl TraceRecord {
    pub fn parse_str(text: &str) -> Result<Self, TraceError> {
        Self::read(text.as_bytes())
    }

    /// Reads a trace, skipping blank lines and checking per-type timestamp order.
    pub fn read<R: BufRead>(reader: R) -> Result<Self, TraceError> {
        let mut rec = TraceRecord::default();
        let mut last_frame = 0u64;
        let mut last_label = 0u64;
        let mut last_event = 0u64;
        let mut last_tick: Option<u64> = None;
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            let line_no = i + 1;
            if line.trim().is_empty() {
                continue;
            }
            let order = |ok: bool, what: &str| {
                if ok {
                    Ok(())
                } else {
                    Err(TraceError::Malformed { line: line_no, msg: format!("{what} goes backwards") })
                }
            };
            let parsed = TraceLine::parse(line.trim(), line_no)?;
            match &parsed {
                TraceLine::Header(h) => {
                    if rec.header.is_some() || !rec.lines.is_empty() {
                        return Err(TraceError::Malformed {
                            line: line_no,
                            msg: "header must be the first line".into(),
                        });
                    }
                    rec.header = Some((**h).clone());
                    continue;
                }
                TraceLine::Frame(f) => {
                    order(f.timestamp_ms >= last_frame, "frame timestamp")?;
                    last_frame = f.timestamp_ms;
                }
                TraceLine::Label { timestamp_ms, .. } => {
                    order(*timestamp_ms >= last_label, "label timestamp")?;
                    last_label = *timestamp_ms;
                }
                TraceLine::Event(e) => {
                    order(e.timestamp_ms >= last_event, "event timestamp")?;
                    last_event = e.timestamp_ms;
                }
                TraceLine::Snapshot(s) => {
                    order(last_tick.is_none_or(|t| s.tick > t), "snapshot tick")?;
                    last_tick = Some(s.tick);
                }
            }
            rec.lines.push(parsed);
        }
        Ok(rec)
    }

    pub fn frames(&self) -> impl Iterator<Item = &LandmarkFrame> {
        self.lines.iter().filter_map(|l| match l {
            TraceLine::Frame(f) => Some(f),
            _ => None,
        })
    }

    pub fn events(&self) -> impl Iterator<Item = &CommandEvent> {
        self.lines.iter().filter_map(|l| match l {
            TraceLine::Event(e) => Some(e),
            _ => None,
        })
    }

    pub fn snapshots(&self) -> impl Iterator<Item = &Snapshot> {
        self.lines.iter().filter_map(|l| match l {
            TraceLine::Snapshot(s) => Some(s),
            _ => None,
        })
    }

    pub fn labels(&self) -> impl Iterator<Item = (u64, GestureClass)> + '_ {
        self.lines.iter().filter_map(|l| match l {
            TraceLine::Label { timestamp_ms, label } => Some((*timestamp_ms, *label)),
            _ => None,
        })
    }

    /// Event and snapshot lines, encoded, in order.
    pub fn event_and_snapshot_lines(&self) -> Vec<String> {
        self.lines.iter().filter(|l| l.is_event_or_snapshot()).map(TraceLine::to_line).collect()
    }

    /// Serializes the whole record, one line per entry, newline terminated.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(h) = &self.header {
            out.push_str(&TraceLine::Header(Box::new(h.clone())).to_line());
            out.push('\n');
        }
        for l in &self.lines {
            out.push_str(&l.to_line());
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snapshot_wire_format() {
        let s = Snapshot {
            tick: 12,
            status: StatusTag::Crashed,
            restart_in: 60,
            car_lane: 1,
            lanes: 3,
            obstacles: vec![ObstacleView { lane: 2, y: 0.5 }],
            score: 4,
            best: 9,
            command: CommandTag::Left,
        };
        assert_eq!(
            s.to_line(),
            r#"{"tick":12,"status":"crashed","restart_in":60,"car_lane":1,"lanes":3,"obstacles":[{"lane":2,"y":0.5}],"score":4,"best":9,"command":"left"}"#
        );
        assert_eq!(TraceLine::parse(&s.to_line(), 1).unwrap(), TraceLine::Snapshot(s));
    }

    #[test]
    fn event_and_label_lines() {
        let e = TraceLine::Event(CommandEvent::press(Direction::Right, 50));
        assert_eq!(e.to_line(), r#"{"t":50,"event":"press","dir":"right"}"#);
        assert_eq!(TraceLine::parse(&e.to_line(), 1).unwrap(), e);
        let l = TraceLine::Label { timestamp_ms: 3, label: GestureClass::Neutral };
        assert_eq!(l.to_line(), r#"{"t":3,"label":"neutral"}"#);
        assert_eq!(TraceLine::parse(&l.to_line(), 1).unwrap(), l);
    }

    #[test]
    fn header_round_trip() {
        let h = TraceLine::Header(Box::new(TraceHeader { version: TRACE_VERSION, config: SessionConfig::default() }));
        assert_eq!(TraceLine::parse(&h.to_line(), 1).unwrap(), h);
    }

    #[test]
    fn rejects_garbage_and_disorder() {
        assert!(TraceRecord::parse_str("{\"what\":1}\n").is_err());
        assert!(TraceRecord::parse_str("[1,2]\n").is_err());
        assert!(TraceRecord::parse_str("{\"t\":5,\"hand\":null}\n{\"t\":4,\"hand\":null}\n").is_err());
        let snap = |t| {
            Snapshot {
                tick: t,
                status: StatusTag::Running,
                restart_in: 0,
                car_lane: 1,
                lanes: 3,
                obstacles: vec![],
                score: 0,
                best: 0,
                command: CommandTag::None,
            }
            .to_line()
        };
        assert!(TraceRecord::parse_str(&format!("{}\n{}\n", snap(2), snap(2))).is_err());
        let hdr = TraceLine::Header(Box::new(TraceHeader { version: 1, config: SessionConfig::default() })).to_line();
        assert!(TraceRecord::parse_str(&format!("{}\n{}\n", snap(0), hdr)).is_err());
    }

    #[test]
    fn record_text_round_trip() {
        let text = "{\"t\":0,\"hand\":null}\n\n{\"t\":0,\"label\":\"none\"}\n{\"t\":16,\"event\":\"release\",\"dir\":\"left\"}\n";
        let rec = TraceRecord::parse_str(text).unwrap();
        assert_eq!(rec.lines.len(), 3);
        assert_eq!(rec.to_text(), text.replace("\n\n", "\n"));
        assert_eq!(rec.labels().collect::<Vec<_>>(), vec![(0, GestureClass::None)]);
    }
}
