use thiserror::Error;

use crate::ifs::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid IFS: {0}")]
    InvalidSpec(#[from] Violation),
    #[error("symbol {symbol} is outside the alphabet {{0, ..., {max}}}")]
    SymbolOutOfAlphabet { symbol: u8, max: usize },
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("expected a two-map IFS, got {0} maps")]
    NotTwoMap(usize),
    #[error("operation needs at least {needed} + 1 maps, got {got} + 1")]
    TooFewMaps { needed: usize, got: usize },
    #[error("enumeration of {words} words exceeds the limit of {limit}")]
    EnumerationCap { words: u128, limit: u128 },
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
    #[error("quantity is not constant on cell ({lo}, {hi}): values {values:?}")]
    NotConstant { lo: f64, hi: f64, values: [f64; 3] },
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),
}
