use thiserror::Error;

/// Errors raised by the counting library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("empty word is not allowed here")]
    EmptyWord,

    #[error("symbol {symbol} is outside the alphabet 1..={sigma}")]
    SymbolOutOfRange { symbol: u32, sigma: u32 },

    #[error("cannot parse word {text:?}: {reason}")]
    Parse { text: String, reason: String },

    #[error("unknown quantity {0:?}")]
    UnknownQuantity(String),

    /// Work estimate exceeds the configured cap. Both sides are decimal
    /// strings because the estimate can be astronomically large.
    #[error("budget exceeded: {what} needs {needed}, cap is {cap}")]
    BudgetExceeded {
        what: &'static str,
        needed: String,
        cap: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
