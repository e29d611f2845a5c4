use thiserror::Error;

use crate::Label;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("label {0} used twice on {1} side")]
    DuplicateLabel(Label, Side),
    #[error("label {0} missing on {1} side")]
    MissingLabel(Label, Side),
    #[error("label 0 is not a positive integer")]
    ZeroLabel,
    #[error("cylinder {0} has an empty boundary word")]
    EmptyWord(usize),
    #[error("diagram is disconnected")]
    Disconnected,
    #[error("diagram has {0} labels, more than the supported maximum of {max}", max = crate::MAX_LABELS)]
    TooManyLabels(usize),
    #[error("marked regular point: diagram has a zero of order 0 and is not reduced")]
    MarkedRegularPoint,
    #[error("cylinder index {0} out of range")]
    NoSuchCylinder(usize),
    #[error("cylinder not simple: C{0}")]
    NotSimple(usize),
    #[error("both boundaries of cylinder C{0} carry the same zero")]
    SameZero(usize),
    #[error("invalid stratum: {0}")]
    InvalidStratum(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("resource bound exceeded: {0}")]
    ResourceBound(String),
    #[error("invalid metric: {0}")]
    InvalidMetric(String),
    #[error("invalid origami: {0}")]
    InvalidOrigami(String),
    #[error("spin parity undefined: zero of odd order {0}")]
    OddZero(u32),
    #[error("stale cylinder: {0}")]
    StaleCylinder(String),
    #[error("invalid direction ({0}, {1}): components must be coprime")]
    InvalidDirection(i64, i64),
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
    #[error("dot parse error: {0}")]
    Dot(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Bottom,
    Top,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Bottom => f.write_str("bottom"),
            Side::Top => f.write_str("top"),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
