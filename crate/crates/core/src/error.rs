//! Error type shared by every module.

use thiserror::Error;

/// Errors raised by the engine. Every variant is a domain error; none is
/// recoverable by retrying.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Dynkin type: {0}")]
    InvalidType(String),
    #[error("length {0} out of range 1..=6")]
    LengthOutOfRange(i64),
    #[error("index {index} out of range {lo}..={hi}")]
    IndexOutOfRange { index: i64, lo: i64, hi: i64 },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("diagram must be {0}")]
    WrongDiagramKind(&'static str),
    #[error("inconsistent rank sequence: {0}")]
    InconsistentRanks(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("start vertex `{0}` is in the kill set")]
    StartKilled(String),
    #[error("knitting did not terminate within {0} layers")]
    GuardExceeded(usize),
    #[error("knitting layer {layer} has mixed signs: {values:?}")]
    MixedSigns { layer: usize, values: Vec<i64> },
    #[error("no consistent chamber walk: {0}")]
    NoConsistentWalk(String),
    #[error("`{0}` is not a member of the simples helix up to twist")]
    NotInHelix(String),
    #[error("ill-typed word: {0}")]
    IllTyped(String),
    #[error("word is not algebraic: letter `{0}`")]
    NonAlgebraic(String),
    #[error("word is open: {0}")]
    OpenWord(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
