use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("multinomial parts sum to {sum}, which exceeds n = {n}")]
    MultinomialOverflow { n: u64, sum: u64 },

    #[error("series precision {have} does not resolve exponent {needed}")]
    PrecisionUnderflow { needed: i64, have: i64 },

    #[error("series has a nonzero pole part (valuation {valuation})")]
    UnexpectedPole { valuation: i64 },

    #[error("word `{0}` is not admissible (must be empty or end in y)")]
    NotAdmissible(String),

    #[error("the unit word has no reduced coproduct")]
    UnitWord,

    #[error("depth {depth} is outside the supported range {min}..={max}")]
    DepthOutOfRange {
        depth: usize,
        min: usize,
        max: usize,
    },

    #[error("total degree {degree} exceeds the series cap {cap}")]
    DegreeCap { degree: u32, cap: u32 },

    #[error("series has {got} variables, expected {expected}")]
    VariableCount { got: usize, expected: usize },

    #[error("composition must be non-empty")]
    EmptyComposition,

    #[error("cannot invert a series that is zero to its working precision")]
    NotInvertible,

    #[error("{0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
