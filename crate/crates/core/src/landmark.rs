//! 21-point hand landmark frames and their line codec.
//!
//! Coordinates are normalized image coordinates: `x` grows rightward, `y`
//! grows downward, both nominally in `[0, 1]`. Trackers report landmarks that
//! leave the frame, so finite values up to [`COORD_SLACK`] outside the unit
//! range are accepted.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

/// Number of landmarks in one hand.
pub const LANDMARK_COUNT: usize = 21;

/// How far outside `[0, 1]` a coordinate may lie and still be accepted.
pub const COORD_SLACK: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum LandmarkIndex {
    Wrist = 0,
    ThumbCmc = 1,
    ThumbMcp = 2,
    ThumbIp = 3,
    ThumbTip = 4,
    IndexFingerMcp = 5,
    IndexFingerPip = 6,
    IndexFingerDip = 7,
    IndexFingerTip = 8,
    MiddleFingerMcp = 9,
    MiddleFingerPip = 10,
    MiddleFingerDip = 11,
    MiddleFingerTip = 12,
    RingFingerMcp = 13,
    RingFingerPip = 14,
    RingFingerDip = 15,
    RingFingerTip = 16,
    PinkyMcp = 17,
    PinkyPip = 18,
    PinkyDip = 19,
    PinkyTip = 20,
}

impl LandmarkIndex {
    pub const ALL: [LandmarkIndex; LANDMARK_COUNT] = [
        Self::Wrist,
        Self::ThumbCmc,
        Self::ThumbMcp,
        Self::ThumbIp,
        Self::ThumbTip,
        Self::IndexFingerMcp,
        Self::IndexFingerPip,
        Self::IndexFingerDip,
        Self::IndexFingerTip,
        Self::MiddleFingerMcp,
        Self::MiddleFingerPip,
        Self::MiddleFingerDip,
        Self::MiddleFingerTip,
        Self::RingFingerMcp,
        Self::RingFingerPip,
        Self::RingFingerDip,
        Self::RingFingerTip,
        Self::PinkyMcp,
        Self::PinkyPip,
        Self::PinkyDip,
        Self::PinkyTip,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Self> {
        Self::ALL.get(i).copied()
    }

    /// Upper snake case name as used by common hand trackers.
    pub fn name(self) -> &'static str {
        match self {
            Self::Wrist => "WRIST",
            Self::ThumbCmc => "THUMB_CMC",
            Self::ThumbMcp => "THUMB_MCP",
            Self::ThumbIp => "THUMB_IP",
            Self::ThumbTip => "THUMB_TIP",
            Self::IndexFingerMcp => "INDEX_FINGER_MCP",
            Self::IndexFingerPip => "INDEX_FINGER_PIP",
            Self::IndexFingerDip => "INDEX_FINGER_DIP",
            Self::IndexFingerTip => "INDEX_FINGER_TIP",
            Self::MiddleFingerMcp => "MIDDLE_FINGER_MCP",
            Self::MiddleFingerPip => "MIDDLE_FINGER_PIP",
            Self::MiddleFingerDip => "MIDDLE_FINGER_DIP",
            Self::MiddleFingerTip => "MIDDLE_FINGER_TIP",
            Self::RingFingerMcp => "RING_FINGER_MCP",
            Self::RingFingerPip => "RING_FINGER_PIP",
            Self::RingFingerDip => "RING_FINGER_DIP",
            Self::RingFingerTip => "RING_FINGER_TIP",
            Self::PinkyMcp => "PINKY_MCP",
            Self::PinkyPip => "PINKY_PIP",
            Self::PinkyDip => "PINKY_DIP",
            Self::PinkyTip => "PINKY_TIP",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2D {
    pub x: f64,
    pub y: f64,
    /// Relative depth. Carried through the codec, never used for classification.
    pub z: Option<f64>,
}

impl Point2D {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y, z: None }
    }

    pub fn distance(&self, other: &Point2D) -> f64 {
        (other.x - self.x).hypot(other.y - self.y)
    }

    fn in_range(&self) -> bool {
        let ok = |v: f64| v.is_finite() && (-COORD_SLACK..=1.0 + COORD_SLACK).contains(&v);
        ok(self.x) && ok(self.y) && self.z.is_none_or(f64::is_finite)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Handedness {
    #[serde(rename = "left")]
    LeftHand,
    #[serde(rename = "right")]
    RightHand,
    #[default]
    Unknown,
}

impl Handedness {
    pub fn swapped(self) -> Self {
        match self {
            Self::LeftHand => Self::RightHand,
            Self::RightHand => Self::LeftHand,
            Self::Unknown => Self::Unknown,
        }
    }
}

pub type Hand = [Point2D; LANDMARK_COUNT];

/// One camera frame: the detected hand, if any.
#[derive(Debug, Clone, PartialEq)]
pub struct LandmarkFrame {
    pub timestamp_ms: u64,
    pub hand: Option<Box<Hand>>,
    pub handedness: Handedness,
}

impl LandmarkFrame {
    pub fn empty(timestamp_ms: u64) -> Self {
        Self { timestamp_ms, hand: None, handedness: Handedness::Unknown }
    }

    /// Validates a point list and builds a frame with a hand.
    pub fn with_hand(timestamp_ms: u64, points: &[Point2D]) -> Result<Self, FrameError> {
        let hand: Hand = points.try_into().map_err(|_| FrameError::PointCount(points.len()))?;
        if let Some(i) = hand.iter().position(|p| !p.in_range()) {
            return Err(FrameError::BadCoordinate(i));
        }
        Ok(Self { timestamp_ms, hand: Some(Box::new(hand)), handedness: Handedness::Unknown })
    }

    pub fn point(&self, idx: LandmarkIndex) -> Option<&Point2D> {
        self.hand.as_ref().map(|h| &h[idx.index()])
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum FrameError {
    #[error("malformed frame: {0}")]
    Syntax(String),
    #[error("malformed frame: expected 21 points, got {0}")]
    PointCount(usize),
    #[error("malformed frame: point {0} has a non-finite or out-of-range coordinate")]
    BadCoordinate(usize),
    #[error("malformed frame: timestamp must be a non-negative integer")]
    Timestamp,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFrame {
    t: Value,
    hand: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    handedness: Option<Handedness>,
}

#[derive(Serialize)]
struct FrameOut<'a> {
    t: u64,
    hand: Option<Vec<PointOut<'a>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    handedness: Option<Handedness>,
}

struct PointOut<'a>(&'a Point2D);

impl Serialize for PointOut<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let p = self.0;
        let mut seq = s.serialize_seq(Some(if p.z.is_some() { 3 } else { 2 }))?;
        seq.serialize_element(&p.x)?;
        seq.serialize_element(&p.y)?;
        if let Some(z) = p.z {
            seq.serialize_element(&z)?;
        }
        seq.end()
    }
}

/// Parses one frame message.
pub fn decode_frame(line: &str) -> Result<LandmarkFrame, FrameError> {
    let raw: RawFrame = serde_json::from_str(line.trim()).map_err(|e| FrameError::Syntax(e.to_string()))?;
    frame_from_raw(raw)
}

/// Parses a frame from an already-decoded JSON object.
pub fn frame_from_value(value: Value) -> Result<LandmarkFrame, FrameError> {
    let raw: RawFrame = serde_json::from_value(value).map_err(|e| FrameError::Syntax(e.to_string()))?;
    frame_from_raw(raw)
}

fn frame_from_raw(raw: RawFrame) -> Result<LandmarkFrame, FrameError> {
    let timestamp_ms = raw.t.as_u64().ok_or(FrameError::Timestamp)?;
    let handedness = raw.handedness.unwrap_or_default();
    let Some(pairs) = raw.hand else {
        return Ok(LandmarkFrame { handedness, ..LandmarkFrame::empty(timestamp_ms) });
    };
    let mut points = Vec::with_capacity(pairs.len());
    for (i, coords) in pairs.iter().enumerate() {
        let p = match coords.as_slice() {
            [x, y] => Point2D::new(*x, *y),
            [x, y, z] => Point2D { x: *x, y: *y, z: Some(*z) },
            _ => return Err(FrameError::Syntax(format!("point {i} must have 2 or 3 coordinates"))),
        };
        points.push(p);
    }
    let mut frame = LandmarkFrame::with_hand(timestamp_ms, &points)?;
    frame.handedness = handedness;
    Ok(frame)
}

/// Serializes a frame as a single-line message (no trailing newline).
pub fn encode_frame(frame: &LandmarkFrame) -> String {
    let out = FrameOut {
        t: frame.timestamp_ms,
        hand: frame.hand.as_ref().map(|h| h.iter().map(PointOut).collect()),
        handedness: match frame.handedness {
            Handedness::Unknown => None,
            h => Some(h),
        },
    };
    serde_json::to_string(&out).expect("frame serialization is infallible")
}

/// Reflects the frame horizontally (selfie view correction).
pub fn mirror_frame(frame: &LandmarkFrame) -> LandmarkFrame {
    let hand = frame.hand.as_ref().map(|h| {
        let mut m = **h;
        for p in m.iter_mut() {
            p.x = 1.0 - p.x;
        }
        Box::new(m)
    });
    LandmarkFrame { timestamp_ms: frame.timestamp_ms, hand, handedness: frame.handedness.swapped() }
}
