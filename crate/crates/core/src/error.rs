use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A fuzzy number whose vertices or height break the trapezoid invariants.
    #[error("invalid fuzzy number ({a}, {b}, {c}, {d}; {w}): {reason}")]
    InvalidFuzzyNumber {
        a: f64,
        b: f64,
        c: f64,
        d: f64,
        w: f64,
        reason: &'static str,
    },

    #[error("orness must lie in [0, 1], got {0}")]
    InvalidOrness(f64),

    #[error("weight vector needs at least 2 positions, got {0}")]
    TooFewWeights(usize),

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("expected a weight vector of length {expected}, got {actual}")]
    WeightLength { expected: usize, actual: usize },

    #[error("cannot rank an empty list")]
    EmptyList,

    #[error("invalid frame: {0}")]
    InvalidFrame(String),

    #[error("expected {expected} scores, got {actual}")]
    SizeMismatch { expected: usize, actual: usize },

    #[error("similarity score {0} outside [0, 1]")]
    ScoreOutOfRange(f64),

    #[error("invalid mass function: {0}")]
    InvalidMass(String),

    #[error("mass functions are defined over different frames")]
    FrameMismatch,

    /// Dempster's rule is undefined when the two bodies of evidence fully conflict.
    #[error("total conflict combining {left} with {right} (k = {conflict})")]
    TotalConflict {
        left: String,
        right: String,
        conflict: f64,
    },

    #[error("invalid assessment matrix: {0}")]
    InvalidMatrix(String),
}
