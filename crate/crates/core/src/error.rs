use thiserror::Error;

use crate::action::Action;
use crate::logic::WfViolation;
use crate::system::Violation;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid system: {}", join(.0))]
    InvalidSystem(Vec<Violation>),

    #[error("action sets differ: {{{}}} vs {{{}}}", join(.left), join(.right))]
    ActionSetMismatch { left: Vec<Action>, right: Vec<Action> },

    #[error("signatures differ")]
    SignatureMismatch,

    #[error("label {0} is not in the declared action set")]
    InvalidLabel(Action),

    #[error("bisimulation set contains {0}, which is not a common action")]
    BisimSetNotSubset(Action),

    #[error("ill-formed formula: {}", join(.0))]
    IllFormed(Vec<WfViolation>),

    #[error("not in the range of the translation: {0}")]
    NotInRange(String),

    #[error("instance too large for the brute-force oracle: {pairs} state pairs (cap {cap})")]
    InstanceTooLarge { pairs: usize, cap: usize },

    #[error("renaming is not defined on {0}")]
    NonTotalMap(Action),

    #[error("renaming sends {from} to {to}, which is outside the target")]
    OutsideTarget { from: Action, to: Action },

    #[error("renaming sends {from} to {to}, which lies in a different signature class")]
    ClassIncompatible { from: Action, to: Action },

    #[error("bivariant class must be empty here")]
    BivariantNotAllowed,

    #[error("unknown state {0:?}")]
    UnknownState(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// A syntax error with a 1-based source position.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> ParseError {
        ParseError { line, column, message: message.into() }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

fn join<T: std::fmt::Display>(items: &[T]) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}
