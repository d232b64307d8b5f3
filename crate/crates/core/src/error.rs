use thiserror::Error;

use crate::interval::Interval;

/// Errors produced by signal construction and interval functionals.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point {x} outside the signal domain {domain}")]
    OutOfDomain { x: f64, domain: Interval },

    #[error("interval ({lo}, {hi}) is empty (need lo < hi)")]
    EmptyInterval { lo: f64, hi: f64 },

    #[error("sampling needs at least 2 points, got {n}")]
    BadResolution { n: usize },

    #[error("affine map with zero scale is not invertible")]
    DegenerateMap,

    #[error("unknown signal family kind `{0}`")]
    UnknownKind(String),

    #[error("no window of any requested scale fits inside the domain")]
    NoValidWindow,

    #[error("mesh {mesh} must lie in (0, {max}] for this interval")]
    BadMesh { mesh: f64, max: f64 },

    #[error("split point {split} must lie strictly inside the interval")]
    BadSplit { split: f64 },

    #[error("signal coincides with its mean on a set of measure {flat_len} inside ({lo}, {hi})")]
    FlatAtMean { lo: f64, hi: f64, flat_len: f64 },

    #[error("least-squares fit is ill conditioned (condition number {cond:.3e})")]
    IllConditioned { cond: f64 },

    #[error("signal derivative changes sign inside the probe window")]
    NotMonotone,

    #[error("power branch point {b} must satisfy b <= {lo} so the argument keeps one sign")]
    BadBranch { b: f64, lo: f64 },

    #[error("power exponent must be positive, got {0}")]
    BadExponent(f64),

    #[error("need 0 <= a < b, got a={a}, b={b}")]
    BadInterval { a: f64, b: f64 },

    #[error("quotient map contains no entries")]
    EmptyMap,

    #[error("invalid signal: {0}")]
    InvalidSignal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
