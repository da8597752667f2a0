use thiserror::Error;

use crate::ring::RingSpec;

/// Errors shared by every module of the crate.
///
/// Rendered values are stored as strings so the enum stays independent of the
/// arbitrary-precision integer type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(RingSpec, RingSpec),

    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),

    #[error("{value} is not in the ideal {ideal} over {ring}")]
    NotInIdeal {
        value: String,
        ideal: String,
        ring: String,
    },

    #[error("{param} = {value} must lie in {ideal}")]
    ParamNotInIdeal {
        param: &'static str,
        value: String,
        ideal: String,
    },

    #[error("symbol reduction needs y or x in {ideal}; y = {y} and x = {x} both fail")]
    NeitherSymbolArgInIdeal { x: String, y: String, ideal: String },

    #[error("index {index} out of range for dimension {n} (indices are 1-based)")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("indices must be distinct, got {0} twice")]
    EqualIndices(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension {found} too small: {what} requires n >= {required}")]
    DimensionTooSmall {
        what: &'static str,
        required: usize,
        found: usize,
    },

    #[error("matrix has determinant {det}, expected 1")]
    NotSpecialLinear { det: String },

    #[error("matrix is not in {class}")]
    NotInClass { class: String },

    #[error("ideal mismatch: expected {expected}, found {found}")]
    IdealMismatch { expected: String, found: String },

    #[error("residue matrix must have trace in pi^2, got trace {trace}")]
    NonzeroTrace { trace: String },

    #[error("enumeration would visit {candidates} candidates, above the limit {limit}")]
    EnumerationLimit { candidates: u128, limit: u64 },

    #[error("order enumeration requires a finite ring, got {0}")]
    NotFinite(RingSpec),

    #[error("counterexample family requires N >= 4, got {0}")]
    CounterexampleRange(u64),

    #[error("generator list must be nonempty")]
    EmptyGenerators,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant violated: {0}")]
    InvariantViolation(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
