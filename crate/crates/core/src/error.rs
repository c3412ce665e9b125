use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("symbol name {0:?} is not allowed")]
    InvalidSymbolName(String),

    #[error("symbol {0:?} declared twice")]
    DuplicateSymbol(String),

    #[error("unknown symbol {name:?} at column {column}")]
    UnknownSymbol { name: String, column: usize },

    #[error("malformed power {token:?} at column {column}")]
    MalformedPower { token: String, column: usize },

    #[error("rotation by {amount} is out of range for a word of length {len}")]
    RotationOutOfRange { amount: usize, len: usize },

    #[error("operation needs a non-empty word")]
    EmptyWord,

    #[error("rule has an empty left-hand side")]
    EmptyLhs,

    #[error("rule rewrites {0} to itself")]
    TrivialRule(String),

    #[error("no rule with id {0}")]
    UnknownRule(usize),

    #[error("rule {rule} never applies to a rotation of {word}")]
    RuleNeverApplies { rule: usize, word: String },

    #[error("reduction did not reach a normal form within {budget} steps")]
    BudgetExceeded { budget: usize },

    #[error("{count} words of length {length} exceed the node budget of {budget}")]
    TooManyWords {
        count: u128,
        length: usize,
        budget: usize,
    },

    #[error("operation needs a length-nonincreasing system")]
    NotLengthNonincreasing,

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
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
