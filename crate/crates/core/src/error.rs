use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("elements belong to different fields")]
    SpecMismatch,
    #[error("value {value} is not an element of GF({q})")]
    ElementOutOfRange { value: u32, q: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("element {0} is not a square")]
    NotASquare(u32),

    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("generator rows span the zero code")]
    ZeroCode,
    #[error("work budget exceeded: {required} enumerations needed, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("oracle count {0} is not a power of q")]
    NonPowerCount(u128),
    #[error("scaling coordinate {position} is zero")]
    ZeroScale { position: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("construction requires q > 3, got q = {q}")]
    SmallFieldUnsupported { q: u32 },
    #[error("no LCD scaling found after {trials} random trials and the deterministic sweep")]
    SearchExhausted { trials: usize },
    #[error("code is already LCD")]
    AlreadyLcd,
    #[error("code is not LCD")]
    NotLcd,
    #[error("no witness: {0}")]
    NoWitness(String),
    #[error("wrong characteristic: {0}")]
    WrongCharacteristic(String),
    #[error("hull dimension {h} is smaller than requested l = {l}")]
    HullTooSmall { l: usize, h: usize },
    #[error("-1 is a square in GF({q})")]
    MinusOneIsSquare { q: u32 },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
