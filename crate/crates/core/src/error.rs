use thiserror::Error;

/// Errors reported by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("a space must contain at least one point")]
    EmptySpace,
    #[error("point {index} lies outside a space of {size} points")]
    PointOutOfRange { index: usize, size: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(&'static str),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(&'static str),
    #[error("space size {size} exceeds the partition enumeration guard {guard}")]
    SizeGuard { size: usize, guard: usize },
    #[error("{words} words exceed the enumeration guard {guard}")]
    WordGuard { words: u128, guard: u128 },
    #[error("matrix entries must be finite")]
    NonFinite,
    #[error("no closed form for the coefficient table of a {0} operator")]
    NoClosedForm(&'static str),
    #[error("window radius {needed} required, table has radius {available}")]
    WindowTooSmall { needed: usize, available: usize },
    #[error("inconsistent table: omega(0,0) = {re} + {im}i")]
    Inconsistent { re: f64, im: f64 },
    #[error("samples do not vanish outside the localisation interval (grid index {index})")]
    SupportViolation { index: usize },
    #[error("grid of {points} points is too coarse, need at least {min}")]
    GridTooCoarse { points: usize, min: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("kernel mode does not match the input")]
    ModeMismatch,
    #[error("operator is not unitary")]
    NotUnitary,
}

pub type Result<T> = core::result::Result<T, Error>;
