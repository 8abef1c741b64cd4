use thiserror::Error;

/// Errors raised by every layer of the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cannot parse `{input}` as a rational: {reason}")]
    ParseRational { input: String, reason: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("zero denominator in rational-function identity")]
    ZeroDenominator,

    #[error("invalid enclosure: lower end {lo} exceeds upper end {hi}")]
    InvertedEnclosure { lo: String, hi: String },

    #[error("predicate has the same sign at both ends of [{lo}, {hi}]")]
    NoSignChange { lo: String, hi: String },

    #[error("bisection did not reach the requested width after {0} steps")]
    NotConverged(usize),

    #[error("unknown edge or element id {0}")]
    UnknownEdge(usize),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("duplicate edge id {0}")]
    DuplicateEdge(usize),

    #[error("cannot contract loop {0}")]
    ContractLoop(usize),

    #[error("missing weight for edge {0}")]
    MissingWeight(usize),

    #[error("{what} exceeds the supported size: {got} > {limit}")]
    TooLarge { what: &'static str, got: usize, limit: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("indeterminate form 0/0 in {0}")]
    Indeterminate(&'static str),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
