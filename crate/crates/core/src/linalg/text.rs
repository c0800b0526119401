//! Plain-text matrix format.
//!
//! ```text
//! rows cols
//! a00 a01 ... a0(cols-1)
//! ...
//! ```
//!
//! Entries are decimal integers separated by single spaces; every line,
//! including the last, ends with `\n`. Parsing tolerates extra whitespace
//! and trailing blank lines, so `write(parse(write(m))) == write(m)`.

use std::fmt::{Display, Write as _};
use std::str::FromStr;

use thiserror::Error;

use super::Matrix;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseMatrixError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseMatrixError {
    ParseMatrixError {
        line,
        message: message.into(),
    }
}

impl<T: Scalar + Display> Matrix<T> {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.rows(), self.cols());
        for row in self.row_iter() {
            let mut first = true;
            for x in row {
                if !first {
                    out.push(' ');
                }
                first = false;
                let _ = write!(out, "{x}");
            }
            out.push('\n');
        }
        out
    }
}

impl<T: Scalar + FromStr> Matrix<T> {
    pub fn parse_text(text: &str) -> Result<Self, ParseMatrixError> {
        let mut lines = text.lines().enumerate();
        let (header_no, header) = lines
            .by_ref()
            .find(|(_, l)| !l.trim().is_empty())
            .ok_or_else(|| err(1, "missing `rows cols` header"))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|e| err(header_no + 1, format!("bad header: {e}")))?;
        let [rows, cols] = dims[..] else {
            return Err(err(header_no + 1, "header must be exactly `rows cols`"));
        };

        let mut data = Vec::with_capacity(rows * cols);
        let mut seen = 0;
        for (no, line) in lines {
            if seen == rows {
                if line.trim().is_empty() {
                    continue;
                }
                return Err(err(no + 1, format!("unexpected data after {rows} rows")));
            }
            let before = data.len();
            for tok in line.split_whitespace() {
                let v = tok
                    .parse::<T>()
                    .map_err(|_| err(no + 1, format!("bad entry `{tok}`")))?;
                data.push(v);
            }
            let found = data.len() - before;
            if found != cols {
                return Err(err(
                    no + 1,
                    format!("expected {cols} entries, found {found}"),
                ));
            }
            seen += 1;
        }
        if seen != rows {
            return Err(err(
                text.lines().count().max(1),
                format!("expected {rows} rows, found {seen}"),
            ));
        }
        Ok(Matrix { rows, cols, data })
    }
}
