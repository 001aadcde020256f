//! Line-oriented text formats: SPN documents, DIMACS CNF, edge-list graphs,
//! and evidence / assignment strings.

mod dimacs;
mod evidence;
mod graph;
mod spn;

pub use dimacs::{parse_dimacs_cnf, write_dimacs_cnf};
pub use evidence::{format_config, parse_assignment, parse_evidence};
pub use graph::{parse_graph, write_graph};
pub use spn::{parse_spn, serialize_raw, serialize_spn};

use std::fmt::Display;
use std::str::FromStr;

/// Syntax error at a 1-based line.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError { line, message: message.into() }
    }
}

/// Non-empty lines with comments (from `comment` to end of line) removed,
/// paired with their 1-based line numbers.
pub(crate) fn content_lines(text: &str, comment: char) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(move |(i, line)| {
        let line = line.split(comment).next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

pub(crate) fn number<T>(token: Option<&str>, what: &str, line: usize) -> Result<T, ParseError>
where
    T: FromStr,
    T::Err: Display,
{
    let token = token.ok_or_else(|| ParseError::new(line, format!("missing {what}")))?;
    token
        .parse()
        .map_err(|e| ParseError::new(line, format!("bad {what} {token:?}: {e}")))
}

pub(crate) fn no_trailing<'a>(mut rest: impl Iterator<Item = &'a str>, line: usize) -> Result<(), ParseError> {
    match rest.next() {
        None => Ok(()),
        Some(token) => Err(ParseError::new(line, format!("unexpected trailing token {token:?}"))),
    }
}
