use thiserror::Error;

use crate::formula::SentenceLetter;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed concrete syntax. `position` is a byte offset into the source.
    #[error("syntax error at {position}: expected {expected}, found {found}")]
    Syntax {
        position: usize,
        expected: String,
        found: String,
    },

    #[error("letter {0} is not declared by the valuation")]
    UndeclaredLetter(SentenceLetter),

    #[error("{what} needs {requested}, which exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        requested: usize,
        cap: usize,
    },

    #[error("{kind} takes {expected} generator(s), got {got}")]
    Arity {
        kind: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("connective {connective} is not defined in {semantics} semantics")]
    ConnectiveNotInSemantics {
        connective: &'static str,
        semantics: &'static str,
    },

    #[error("{connective} expects {expected} operand(s)")]
    OperandCount {
        connective: &'static str,
        expected: usize,
    },

    #[error("variable {0} is free; only closed formulas can be evaluated")]
    OpenFormula(String),

    #[error("predicate {0} has no extension in the model")]
    UnknownPredicate(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("invalid valuation: {0}")]
    InvalidValuation(String),
}
