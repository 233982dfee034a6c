use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown argument `{0}`")]
    UnknownArgument(String),
    #[error("argument `{id}` has initial strength {tau} outside [0, 1]")]
    TauOutOfRange { id: String, tau: f64 },
    #[error("argument id must be non-empty")]
    EmptyId,
    #[error("duplicate argument `{0}`")]
    DuplicateArgument(String),
    #[error("duplicate {kind} edge ({from}, {to})")]
    DuplicateEdge { kind: EdgeKind, from: String, to: String },
    #[error("framework contains a cycle; an acyclic framework is required")]
    Cyclic,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid semantics: {0}")]
    InvalidSemantics(String),
    #[error("partial sums must be non-negative (plus = {plus}, minus = {minus})")]
    NegativePartialSum { plus: f64, minus: f64 },
    #[error("aggregate {alpha} does not equal plus - minus = {plus} - {minus}")]
    InconsistentAggregate { alpha: f64, plus: f64, minus: f64 },
    #[error("unknown principle `{0}`")]
    UnknownPrinciple(String),
    #[error("csv output failed: {0}")]
    Csv(String),
}

/// The two relation kinds of a framework.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    Attack,
    Support,
}

impl std::fmt::Display for EdgeKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EdgeKind::Attack => f.write_str("attack"),
            EdgeKind::Support => f.write_str("support"),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
