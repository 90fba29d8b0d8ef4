//! Plain-text serialization of MOFS sets.
//!
//! ```text
//! MOFS m=2 lambda=1 count=1
//! 1 2
//! 2 1
//! ```
//!
//! Each square is `n` lines of `n` space-separated symbols, squares are
//! separated by one blank line, and lines starting with `#` are comments.

use std::fmt::Write as _;

use mofs_core::verify::{verify_mofs, VerifyError};
use mofs_core::{FSquare, MofsSet, Params, SquareError};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("header declares {declared} squares but the file holds {found}")]
    HeaderMismatch { declared: usize, found: usize },
    #[error("square {index}: {source}")]
    RegularityViolation { index: usize, source: SquareError },
    #[error("squares {first} and {second} are not orthogonal")]
    NotOrthogonal { first: usize, second: usize },
    #[error("{0}")]
    Set(VerifyError),
}

pub fn encode(set: &MofsSet) -> String {
    let p = set.params();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "MOFS m={} lambda={} count={}",
        p.m(),
        p.lambda(),
        set.len()
    );
    for (k, square) in set.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        for row in square.rows() {
            let mut first = true;
            for s in row {
                if !first {
                    out.push(' ');
                }
                first = false;
                let _ = write!(out, "{s}");
            }
            out.push('\n');
        }
    }
    out
}

/// Parses and validates every square, then checks pairwise orthogonality.
pub fn decode(text: &str) -> Result<MofsSet, FormatError> {
    let squares = decode_squares(text)?;
    verify_mofs(squares).map_err(|e| match e {
        VerifyError::NotOrthogonal { first, second, .. } => {
            FormatError::NotOrthogonal { first, second }
        }
        other => FormatError::Set(other),
    })
}

/// Parses and validates each square without checking orthogonality.
pub fn decode_squares(text: &str) -> Result<Vec<FSquare>, FormatError> {
    let mut lines = text
        .split('\n')
        .enumerate()
        .map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)))
        .filter(|(_, l)| !l.starts_with('#'));
    if !text.is_empty() && !text.ends_with('\n') {
        let last = text.split('\n').count();
        return Err(parse_err(last, "missing trailing newline"));
    }

    let (header_line, header) = lines
        .by_ref()
        .find(|(_, l)| !l.trim().is_empty())
        .ok_or_else(|| parse_err(1, "empty file"))?;
    let (params, count) = parse_header(header_line, header)?;
    let n = params.n();

    let mut squares = Vec::new();
    let mut rows: Vec<Vec<u8>> = Vec::with_capacity(n);
    let mut start_line = 0;
    for (line, text) in lines {
        if text.trim().is_empty() {
            if !rows.is_empty() {
                return Err(parse_err(
                    line,
                    &format!("square has {} rows, expected {n}", rows.len()),
                ));
            }
            continue;
        }
        if rows.is_empty() {
            start_line = line;
        }
        rows.push(parse_row(line, text, n)?);
        if rows.len() == n {
            let index = squares.len() + 1;
            let square = FSquare::new(params, &rows)
                .map_err(|source| FormatError::RegularityViolation { index, source })?;
            squares.push(square);
            rows.clear();
        }
    }
    if !rows.is_empty() {
        return Err(parse_err(
            start_line,
            &format!("square has {} rows, expected {n}", rows.len()),
        ));
    }
    if squares.len() != count {
        return Err(FormatError::HeaderMismatch {
            declared: count,
            found: squares.len(),
        });
    }
    Ok(squares)
}

fn parse_err(line: usize, message: &str) -> FormatError {
    FormatError::Parse {
        line,
        message: message.to_owned(),
    }
}

fn parse_header(line: usize, text: &str) -> Result<(Params, usize), FormatError> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    let [magic, m, lambda, count] = fields[..] else {
        return Err(parse_err(
            line,
            "expected `MOFS m=<m> lambda=<lambda> count=<t>`",
        ));
    };
    if magic != "MOFS" {
        return Err(parse_err(line, "expected `MOFS` header"));
    }
    let field = |text: &str, key: &str| -> Result<usize, FormatError> {
        text.strip_prefix(key)
            .and_then(|v| v.strip_prefix('='))
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| parse_err(line, &format!("bad `{key}=` field")))
    };
    let (m, lambda, count) = (
        field(m, "m")?,
        field(lambda, "lambda")?,
        field(count, "count")?,
    );
    let params = Params::new(m, lambda).map_err(|e| parse_err(line, &e.to_string()))?;
    if count == 0 {
        return Err(parse_err(line, "count must be positive"));
    }
    Ok((params, count))
}

fn parse_row(line: usize, text: &str, n: usize) -> Result<Vec<u8>, FormatError> {
    let row = text
        .split_whitespace()
        .map(|t| t.parse::<u8>())
        .collect::<Result<Vec<u8>, _>>()
        .map_err(|_| parse_err(line, "expected symbols 1..=m"))?;
    if row.len() != n {
        return Err(parse_err(
            line,
            &format!("row has {} entries, expected {n}", row.len()),
        ));
    }
    Ok(row)
}
