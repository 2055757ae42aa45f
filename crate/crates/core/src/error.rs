use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("table entry ({row},{col}) = {value} is outside [0,{order})")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("table has {got} entries, expected {expected}")]
    BadTableSize { expected: usize, got: usize },
    #[error("table order must be positive")]
    EmptyTable,

    #[error("not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("element 0 is not a two-sided neutral element (witness {0})")]
    NoIdentity(usize),
    #[error("element {0} has no two-sided inverse")]
    MissingInverse(usize),

    #[error("unsupported group parameter: {0}")]
    UnsupportedGroup(String),
    #[error("cannot parse group spec {0:?}")]
    BadGroupSpec(String),

    #[error("element index {index} out of range for group of order {order}")]
    ElementOutOfRange { index: usize, order: usize },
    #[error("unknown pair operation {0:?}")]
    UnknownPairOp(String),
    #[error("cannot parse matrix {0:?}: expected four comma-separated operations or a name")]
    BadMatrix(String),

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("empty {0} side of identity")]
    EmptySide(&'static str),
    #[error("unknown builtin law {0:?}")]
    UnknownBuiltin(String),
    #[error("inverse undefined: {0}")]
    InverseUndefined(String),
    #[error("identity with {vars} variables over order {order} exceeds the evaluation budget")]
    TooManyVariables { vars: usize, order: usize },

    #[error("table orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("input is not a loop with neutral element 0")]
    NotALoop,
    #[error("isomorphism search not attempted for order {0} (limit {1})")]
    SearchTooLarge(usize, usize),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("cannot read table: line {line}: {msg}")]
    TableFormat { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
