use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("value 0 has no codeword")]
    ZeroValue,
    #[error("window size must be at least 1")]
    EmptyWindow,
    #[error("layer index {index} out of range 1..={layers}")]
    LayerIndex { index: usize, layers: usize },
    #[error("empty pattern")]
    EmptyPattern,
    #[error("operation needs the index to be synchronized with the parse position ({pending} symbols of lookahead pending)")]
    LookaheadPending { pending: usize },
    #[error("cannot consume {requested} symbols, only {available} pushed ahead")]
    NotEnoughLookahead { requested: usize, available: usize },
    #[error("bit stream truncated at bit {bit}")]
    Truncated { bit: u64 },
    #[error("gamma codeword too long at bit {bit}")]
    Overflow { bit: u64 },
    #[error("bad magic number")]
    BadMagic,
    #[error("unsupported container version {0}")]
    BadVersion(u8),
    #[error("unknown cost model id {0}")]
    BadModel(u8),
    #[error("window log {0} outside 0..=30")]
    BadWindowLog(u8),
    #[error(
        "match offset {offset} exceeds {available} available bytes (output position {position})"
    )]
    BadOffset {
        offset: u64,
        available: u64,
        position: u64,
    },
    #[error("match length {length} exceeds remaining {remaining} bytes")]
    BadLength { length: u64, remaining: u64 },
    #[error("invalid token: {0}")]
    InvalidToken(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
