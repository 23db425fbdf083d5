//! Line-based text formats: `.oml` lattices, `.gd` Greechie diagrams and
//! `.poset` cover relations.
//!
//! All three share the same lexical rules: UTF-8, whitespace-separated
//! tokens, `#` starts a comment, blank lines are ignored, and apart from the
//! header the order of lines is irrelevant.

pub mod gd;
pub mod oml;
pub mod poset;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{0}")]
    Structure(String),
}

impl ParseError {
    pub(crate) fn at(line: usize, message: impl Into<String>) -> Self {
        ParseError::Syntax { line, message: message.into() }
    }
}

/// Yields `(line number, tokens)` for every non-empty line.
pub(crate) fn tokenized(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

pub(crate) fn number(line: usize, token: &str) -> Result<usize, ParseError> {
    token
        .parse()
        .map_err(|_| ParseError::at(line, format!("expected a number, found {token:?}")))
}
