use thiserror::Error;

use crate::machine::Defect;

/// Errors raised by machine and group operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MachineError {
    #[error("invalid machine: {}", join(.0))]
    Invalid(Vec<Defect>),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("state index {0} out of range")]
    StateOutOfRange(usize),
    #[error("letter index {0} out of range")]
    LetterOutOfRange(usize),
    #[error("machine is not invertible: output row of state `{0}` is not a permutation")]
    NotInvertible(String),
    #[error("machines have different alphabets")]
    AlphabetMismatch,
    #[error("{0}")]
    Usage(String),
}

fn join(defects: &[Defect]) -> String {
    defects.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

/// A machine-file parse error with its 1-based position.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("no machine declaration")]
    NoMachine,
    #[error("missing alphabet declaration")]
    NoAlphabet,
    #[error("no states declared")]
    NoStates,
    #[error("duplicate declaration of `{0}`")]
    Duplicate(String),
    #[error("duplicate state `{0}`")]
    DuplicateState(String),
    #[error("duplicate letter `{0}`")]
    DuplicateLetter(String),
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("letter `{letter}` appears twice in the row of state `{state}`")]
    RepeatedLetter { state: String, letter: String },
    #[error("incomplete state `{state}`: no entry for letter `{letter}`")]
    IncompleteState { state: String, letter: String },
}
