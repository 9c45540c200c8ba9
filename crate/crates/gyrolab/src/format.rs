//! The `.gyro` plain-text table format.
//!
//! ```text
//! # optional comment lines
//! 3
//! 0 1 2
//! 1 2 0
//! 2 0 1
//! ```
//!
//! Blank lines and `#` comments are ignored anywhere. The first data line is
//! the order `n`, followed by exactly `n` data lines of `n` whitespace-
//! separated entries in `0..n`. Anything after the last row is an error, as
//! the format carries one table per file.

use thiserror::Error;

use crate::finite::{CayleyTable, MAX_ORDER};

/// A rejected `.gyro` input, with a 1-based line and column.
#[derive(Clone, PartialEq, Eq, Debug, Error)]
#[error("line {line}, column {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, col: usize, message: impl Into<String>) -> ParseError {
        ParseError { line, col, message: message.into() }
    }
}

/// `(line, col, token)` for every whitespace-separated token of a data line.
fn tokens(line_no: usize, line: &str) -> Vec<(usize, usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((line_no, s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((line_no, s + 1, &line[s..]));
    }
    out
}

fn parse_entry(tok: (usize, usize, &str), what: &str, bound: usize) -> Result<usize, ParseError> {
    let (line, col, text) = tok;
    let value: usize = text
        .parse()
        .map_err(|_| ParseError::new(line, col, format!("expected {what}, got '{text}'")))?;
    if value >= bound {
        return Err(ParseError::new(
            line,
            col,
            format!("{what} {value} is out of range (must be below {bound})"),
        ));
    }
    Ok(value)
}

pub fn parse_gyro(text: &str) -> Result<CayleyTable, ParseError> {
    let mut data_lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim_start();
            !t.is_empty() && !t.starts_with('#')
        });

    let (header_no, header) = data_lines
        .next()
        .ok_or_else(|| ParseError::new(1, 1, "missing table order"))?;
    let header_tokens = tokens(header_no, header);
    let n = parse_entry(header_tokens[0], "table order", MAX_ORDER + 1)?;
    if n == 0 {
        return Err(ParseError::new(header_no, header_tokens[0].1, "table order must be at least 1"));
    }
    if let Some(&(line, col, tok)) = header_tokens.get(1) {
        return Err(ParseError::new(line, col, format!("unexpected token '{tok}' after table order")));
    }

    let mut rows: Vec<Vec<usize>> = Vec::with_capacity(n);
    let mut last_line = header_no;
    for _ in 0..n {
        let (line_no, line) = data_lines.next().ok_or_else(|| {
            ParseError::new(
                last_line,
                1,
                format!("expected {n} table rows, found {}", rows.len()),
            )
        })?;
        last_line = line_no;
        let toks = tokens(line_no, line);
        if toks.len() != n {
            let col = toks.get(n).map(|t| t.1).unwrap_or_else(|| line.len() + 1);
            return Err(ParseError::new(
                line_no,
                col,
                format!("row {} has {} entries, expected {n}", rows.len(), toks.len()),
            ));
        }
        let row = toks
            .into_iter()
            .map(|t| parse_entry(t, "table entry", n))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }

    if let Some((line_no, line)) = data_lines.next() {
        let col = tokens(line_no, line)[0].1;
        return Err(ParseError::new(line_no, col, "unexpected content after table rows"));
    }

    Ok(CayleyTable::from_rows(&rows).expect("entries validated during parsing"))
}

/// Canonical rendering: the order line, then one space-separated line per
/// row, each line newline-terminated. `parse_gyro` inverts this exactly.
pub fn write_gyro(t: &CayleyTable) -> String {
    let mut out = String::new();
    out.push_str(&t.order().to_string());
    out.push('\n');
    for row in t.rows() {
        let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}
