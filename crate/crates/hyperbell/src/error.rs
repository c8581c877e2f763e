use crate::exact::Rat;

/// Crate-wide error type. Arithmetic bugs (a division that must be exact but
/// is not) panic instead: they indicate a broken invariant, not bad input.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A precondition on an argument was violated.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// Cauchy products require both factors truncated at the same order.
    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    /// Series exponentiation requires a zero constant term.
    #[error("series exp requires constant term 0, found {found}")]
    NonzeroConstantTerm { found: Rat },
    /// Series logarithm requires constant term 1.
    #[error("series log requires constant term 1, found {found}")]
    ConstantTermNotOne { found: Rat },
    /// A weighted coefficient that was expected to be an integer is not.
    /// This is the observable outcome the integrality probe looks for.
    #[error("weighted coefficient at index {index} is not an integer: {value}")]
    IntegralityViolation { index: usize, value: Rat },
    /// A certified enclosure could not be narrowed enough to pin the result.
    #[error("certified interval too wide to round: width {width}")]
    InsufficientPrecision { width: Rat },
    /// Sequence ids must look like A000110.
    #[error("bad sequence id: {0:?} (expected 'A' followed by six digits)")]
    BadSequenceId(String),
    /// A b-file line that does not parse, with its 1-based line number.
    #[error("b-file parse error at line {line}: {reason}")]
    BFileParse { line: usize, reason: String },
    /// Comparing two sequences with disjoint index ranges.
    #[error("no overlapping indices between computed sequence and b-file")]
    EmptyOverlap,
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    /// Transport-level failure before an HTTP status was received.
    #[error("network error: {0}")]
    Network(String),
    /// The server answered with a non-success status.
    #[error("http status {status} fetching {url}")]
    HttpStatus { status: u16, url: String },
}

pub type Result<T> = std::result::Result<T, Error>;
