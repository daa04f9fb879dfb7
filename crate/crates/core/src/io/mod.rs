//! Text formats: DIMACS CNF, `p graph` edge lists and constraint formulas.
//!
//! Every parser reports the 1-based line of the first problem. Every writer
//! produces text its parser reads back to an equal value.

mod dimacs;
mod gamma;
mod graph;

pub use dimacs::{parse_dimacs_cnf, write_dimacs_cnf};
pub use gamma::{parse_constraint_language, parse_gamma_formula, write_gamma_formula};
pub use graph::{parse_graph, write_graph};

use thiserror::Error;

use crate::backdoor::CnfError;
use crate::csp::CspError;
use crate::vertex_cover::GraphError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub(crate) fn new(line: usize, kind: ParseErrorKind) -> Self {
        Self { line, kind }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("missing header")]
    MissingHeader,
    #[error("duplicate header")]
    DuplicateHeader,
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("invalid token {0:?}")]
    InvalidToken(String),
    #[error("unexpected line: {0}")]
    UnexpectedLine(String),
    #[error("clause is not terminated by 0")]
    UnterminatedClause,
    #[error("header declares {expected} clauses, found {found}")]
    ClauseCountMismatch { expected: usize, found: usize },
    #[error("header declares {expected} edges, found {found}")]
    EdgeCountMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Cnf(#[from] CnfError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Csp(#[from] CspError),
}

/// Non-blank lines with their 1-based numbers, comments dropped.
fn content_lines<'a>(
    text: &'a str,
    is_comment: impl Fn(&str) -> bool + 'a,
) -> impl Iterator<Item = (usize, &'a str)> + 'a {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(move |(_, l)| !l.is_empty() && !is_comment(l))
}

fn last_line(text: &str) -> usize {
    text.lines().count().max(1)
}

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T, ParseError> {
    tok.parse()
        .map_err(|_| ParseError::new(line, ParseErrorKind::InvalidToken(tok.to_string())))
}
