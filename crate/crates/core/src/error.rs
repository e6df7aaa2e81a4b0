use thiserror::Error;

/// Errors surfaced by parameter validation and the low-level state,
/// operator, and digest routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("node count n must be at least 3 (got n = {0})")]
    NodeCountTooSmall(usize),
    #[error("node count n must be odd (got n = {0})")]
    NodeCountEven(usize),
    #[error("bits per node m must lie in 1..=63 (got m = {0})")]
    BitsPerNodeOutOfRange(u32),
    #[error("scale exponent l must lie in 1..=38 (got l = {0})")]
    ScaleExponentOutOfRange(u32),
    #[error("scale constraint 10^l > 2^m violated (l = {l}, m = {m})")]
    ScaleTooSmall { l: u32, m: u32 },
    #[error("{name} must lie strictly inside (0, pi/2) (got {value})")]
    AngleOutOfRange { name: &'static str, value: f64 },
    #[error("amplitude vector must have length {expected} (got {got})")]
    AmplitudeLength { expected: usize, got: usize },
    #[error("bit position {position} out of range for length {len}")]
    BitPositionOutOfRange { position: usize, len: usize },
    #[error("basis {field} out of range (got {value}, allowed below {bound})")]
    BasisFieldOutOfRange {
        field: &'static str,
        value: usize,
        bound: usize,
    },
    #[error("dimension mismatch (expected {expected}, got {got})")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("digest block {index} does not fit in {m} bits (got {block})")]
    BlockTooWide { index: usize, block: u64, m: u32 },
    #[error("digest bit lengths differ ({left} vs {right})")]
    DigestLengthMismatch { left: usize, right: usize },
    #[error("bit count {bits} is not a multiple of the block width {m}")]
    BitCountNotBlockMultiple { bits: usize, m: u32 },
    #[error("unsupported digest length {0} (registered: 296, 264, 221, 200, 195, 136, 120)")]
    UnsupportedInstance(u32),
}

pub type Result<T> = std::result::Result<T, Error>;
