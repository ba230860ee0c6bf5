use thiserror::Error;

/// Failure while reading the line-oriented algebra format.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: syntax error: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: structural error: {msg}")]
    Structural { line: usize, msg: String },
    #[error("line {line}: numeric error: {msg}")]
    Numeric { line: usize, msg: String },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match self {
            ParseError::Syntax { line, .. }
            | ParseError::Structural { line, .. }
            | ParseError::Numeric { line, .. } => *line,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("split dimension t={t} exceeds algebra dimension {dim}")]
    SplitTooLarge { t: usize, dim: usize },
    #[error("character has {got} entries, expected {expected}")]
    CharacterLength { got: usize, expected: usize },
    #[error("h is not a subalgebra: [{i},{j}] has a component along basis vector {k}")]
    NotSubalgebra { i: usize, j: usize, k: usize },
    #[error("lambda is not a character of h: lambda([{i},{j}]) != 0")]
    NotCharacter { i: usize, j: usize },
    #[error("inconsistent bracket: [{i},{j}] declared twice with different values")]
    InconsistentBracket { i: usize, j: usize },
    #[error("bracket of a basis vector with itself must vanish (index {i})")]
    SelfBracket { i: usize },
}
