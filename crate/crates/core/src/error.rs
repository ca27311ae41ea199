use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("alphabet mismatch: {left} vs {right}")]
    AlphabetMismatch { left: String, right: String },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("rule {lhs} -> {rhs} is not oriented: right-hand side is not smaller")]
    Orientation { lhs: String, rhs: String },

    #[error("degree of the zero element is undefined")]
    UndefinedDegree,

    #[error("no value for generator {0} and none can be derived")]
    Underdetermined(String),

    #[error("generating set is not closed under the involution: {0}")]
    Closure(String),

    #[error("degree {needed} exceeds the certified degree {certified}")]
    Uncertified { needed: usize, certified: usize },

    #[error("syntax error at {line}:{column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("unknown generator `{name}` at column {column}")]
    UnknownGenerator { name: String, column: usize },

    #[error("index out of range at column {column}: {message}")]
    IndexOutOfRange { column: usize, message: String },

    #[error("malformed document: {0}")]
    Format(String),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
