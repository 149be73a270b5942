//! Plain-text array format.
//!
//! ```text
//! # optional comment lines
//! F K
//! <K tokens>   (F lines, each token `*` or a non-negative integer)
//! ```
//!
//! The input must end with a newline.

use std::fmt::Write as _;

use super::{CodedArray, Entry};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("input is empty")]
    EmptyInput,
    #[error("input must end with a newline")]
    MissingTrailingNewline,
    #[error("line {line}: header must be `F K`, found {found:?}")]
    BadHeader { line: usize, found: String },
    #[error("array must have at least one row and one column")]
    EmptyGrid,
    #[error("line {line}: expected {expected} entries, found {found}")]
    Ragged {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: token {token:?} is neither `*` nor a non-negative integer")]
    BadToken { line: usize, token: String },
    #[error("header declares {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
}

fn parse_token(token: &str, line: usize) -> Result<Entry, ParseError> {
    if token == "*" {
        return Ok(Entry::Star);
    }
    let bad = || ParseError::BadToken {
        line,
        token: token.to_string(),
    };
    if !token.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    token.parse::<usize>().map(Entry::Symbol).map_err(|_| bad())
}

/// Parses an array, keeping symbol labels exactly as written.
pub fn parse_array(text: &str) -> Result<CodedArray, ParseError> {
    if text.is_empty() {
        return Err(ParseError::EmptyInput);
    }
    if !text.ends_with('\n') {
        return Err(ParseError::MissingTrailingNewline);
    }
    // 1-based line numbers, comments and blank lines dropped
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(ParseError::EmptyInput)?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    let bad_header = || ParseError::BadHeader {
        line: header_line,
        found: header.to_string(),
    };
    if dims.len() != 2 {
        return Err(bad_header());
    }
    let rows: usize = dims[0].parse().map_err(|_| bad_header())?;
    let cols: usize = dims[1].parse().map_err(|_| bad_header())?;
    if rows == 0 || cols == 0 {
        return Err(ParseError::EmptyGrid);
    }

    let mut cells = Vec::with_capacity(rows * cols);
    let mut seen = 0;
    for (line, content) in lines {
        seen += 1;
        if seen > rows {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.len() != cols {
            return Err(ParseError::Ragged {
                line,
                expected: cols,
                found: tokens.len(),
            });
        }
        for token in tokens {
            cells.push(parse_token(token, line)?);
        }
    }
    if seen != rows {
        return Err(ParseError::RowCount {
            expected: rows,
            found: seen,
        });
    }
    Ok(CodedArray::new(rows, cols, cells).expect("dimensions checked above"))
}

pub(super) fn serialize(array: &CodedArray) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", array.rows(), array.cols());
    for f in 0..array.rows() {
        let row: Vec<String> = array.row(f).iter().map(Entry::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
