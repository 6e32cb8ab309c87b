//! Text format for Cayley tables (`.sgt`).
//!
//! ```text
//! # comment lines start with '#'
//! name: m          (optional header)
//! 4                (order)
//! 0 2 2 2          (n rows of n whitespace-separated entries)
//! 3 1 2 3
//! 2 2 2 2
//! 3 2 2 2
//! ```
//!
//! Blank lines and comments may appear anywhere. Parsing reports 1-based
//! line and column positions; [`parse_table`] additionally validates the
//! semigroup laws.

use thiserror::Error;

use crate::cayley::{CayleyTable, ValidateError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("no order line found")]
    MissingOrder,
    #[error("line {line}: cannot read order from {token:?}")]
    BadOrder { line: usize, token: String },
    #[error("line {line}, column {col}: cannot read entry from {token:?}")]
    BadEntry {
        line: usize,
        col: usize,
        token: String,
    },
    #[error("line {line}: expected {expected} entries in row, found {found}")]
    BadRowLength {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("expected {expected} rows, found {found}")]
    MissingRows { expected: usize, found: usize },
    #[error("line {line}: unexpected content after the table")]
    TrailingContent { line: usize },
}

#[derive(Debug, Error)]
pub enum SgtError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Invalid(#[from] ValidateError),
}

/// A syntactically well-formed table, before semigroup validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawTable {
    pub name: Option<String>,
    pub order: usize,
    pub rows: Vec<Vec<usize>>,
}

/// Splits a line into (1-based column, token) pairs.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let bytes = line.as_bytes();
    let mut i = 0;
    std::iter::from_fn(move || {
        while i < bytes.len() && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        if i >= bytes.len() {
            return None;
        }
        let start = i;
        while i < bytes.len() && !bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        Some((start + 1, &line[start..i]))
    })
}

pub fn parse(text: &str) -> Result<RawTable, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l))
        .filter(|(_, l)| {
            let t = l.trim_start();
            !t.is_empty() && !t.starts_with('#')
        });

    let (mut line_no, mut line) = lines.next().ok_or(ParseError::MissingOrder)?;
    let mut name = None;
    if let Some(rest) = line.trim_start().strip_prefix("name:") {
        name = Some(rest.trim().to_string());
        (line_no, line) = lines.next().ok_or(ParseError::MissingOrder)?;
    }

    let order = {
        let mut toks = tokens(line);
        let (_, tok) = toks.next().ok_or(ParseError::MissingOrder)?;
        let value: usize = tok.parse().map_err(|_| ParseError::BadOrder {
            line: line_no,
            token: tok.to_string(),
        })?;
        if value == 0 || toks.next().is_some() {
            return Err(ParseError::BadOrder {
                line: line_no,
                token: line.trim().to_string(),
            });
        }
        value
    };

    // The declared order is untrusted until the rows actually arrive; clamp
    // the capacity hints so an absurd header cannot abort on allocation.
    let hint = order.min(256);
    let mut rows = Vec::with_capacity(hint);
    for (line_no, line) in lines.by_ref() {
        if rows.len() == order {
            return Err(ParseError::TrailingContent { line: line_no });
        }
        let mut row = Vec::with_capacity(hint);
        for (col, tok) in tokens(line) {
            let value: usize = tok.parse().map_err(|_| ParseError::BadEntry {
                line: line_no,
                col,
                token: tok.to_string(),
            })?;
            row.push(value);
        }
        if row.len() != order {
            return Err(ParseError::BadRowLength {
                line: line_no,
                expected: order,
                found: row.len(),
            });
        }
        rows.push(row);
    }
    if rows.len() != order {
        return Err(ParseError::MissingRows {
            expected: order,
            found: rows.len(),
        });
    }
    Ok(RawTable { name, order, rows })
}

/// Parses and validates in one step.
pub fn parse_table(text: &str) -> Result<CayleyTable, SgtError> {
    let raw = parse(text)?;
    let table = CayleyTable::validate(raw.order, &raw.rows)?;
    Ok(match raw.name {
        Some(name) => table.with_name(name),
        None => table,
    })
}

/// Canonical text form; `parse_table(format(t))` reproduces `t` exactly.
pub fn format(table: &CayleyTable) -> String {
    let n = table.order();
    let mut out = String::new();
    if let Some(name) = table.name() {
        out.push_str("name: ");
        out.push_str(name);
        out.push('\n');
    }
    out.push_str(&n.to_string());
    out.push('\n');
    for i in 0..n {
        for j in 0..n {
            if j > 0 {
                out.push(' ');
            }
            out.push_str(&table.product(i, j).to_string());
        }
        out.push('\n');
    }
    out
}
