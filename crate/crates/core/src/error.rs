use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient variable counts differ: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("at most {max} variables are supported, got {got}")]
    TooManyVariables { got: usize, max: usize },

    #[error("variable index {index} outside 1..={n}")]
    VariableOutOfRange { index: usize, n: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("linear change of coordinates is not invertible")]
    SingularChange,

    #[error("expected a homogeneous element of degree {expected}")]
    NotHomogeneous { expected: usize },

    #[error("{0}")]
    Usage(String),

    #[error("refused: {0}")]
    Refused(String),

    #[error("{0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
