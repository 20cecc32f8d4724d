use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet size {0} unsupported (need 2 <= q <= 255)")]
    AlphabetSize(usize),

    #[error("symbol {symbol} out of range for q={q}")]
    SymbolOutOfRange { symbol: usize, q: usize },

    #[error("invalid character {0:?} in word")]
    BadCharacter(char),

    #[error("empty word has no runs")]
    EmptyWord,

    #[error("alphabet mismatch: q={left} vs q={right}")]
    AlphabetMismatch { left: usize, right: usize },

    #[error("subsequence longer than supersequence ({sub} > {sup})")]
    LengthOrder { sub: usize, sup: usize },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("run count {runs} exceeds word length {len}")]
    TooManyRuns { runs: usize, len: usize },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("enumeration too large: {size} exceeds {cap} cap of {limit}")]
    CapExceeded {
        cap: &'static str,
        size: u128,
        limit: u64,
    },

    #[error("operation requires a binary word (q=2)")]
    NotBinary,

    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}
