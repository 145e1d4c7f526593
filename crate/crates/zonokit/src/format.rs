//! Matrix files: JSON `{"rows", "cols", "data"}` (row-major) or plain text
//! with one matrix row per line.

use std::fmt;

use serde::{Deserialize, Serialize};
use zonokit_core::Matrix;

#[derive(Clone, Debug, PartialEq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

fn error(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

/// The JSON layout of a matrix. Unknown fields are ignored, so result files
/// that embed a matrix at top level can be read back.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixRecord {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl MatrixRecord {
    pub fn from_matrix(m: &Matrix) -> Self {
        MatrixRecord {
            rows: m.rows(),
            cols: m.cols(),
            data: (0..m.rows())
                .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
                .map(|(i, j)| m[(i, j)])
                .collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<Matrix, String> {
        if self.rows == 0 || self.cols == 0 {
            return Err("matrix must have at least one row and one column".into());
        }
        if self.data.len() != self.rows * self.cols {
            return Err(format!(
                "data has {} entries, expected rows × cols = {}",
                self.data.len(),
                self.rows * self.cols
            ));
        }
        Matrix::new(self.rows, self.cols, self.data.clone()).map_err(|e| e.to_string())
    }
}

/// Parses a matrix from JSON (when the first non-blank character is `{`)
/// or whitespace-separated text. Blank lines and lines starting with `#`
/// are skipped in text input.
pub fn parse_matrix(input: &str) -> Result<Matrix, ParseError> {
    if input.trim_start().starts_with('{') {
        parse_json(input)
    } else {
        parse_text(input)
    }
}

fn parse_json(input: &str) -> Result<Matrix, ParseError> {
    let record: MatrixRecord =
        serde_json::from_str(input).map_err(|e| error(e.line(), e.column(), e.to_string()))?;
    if let Some(i) = record.data.iter().position(|x| !x.is_finite()) {
        return Err(error(1, 1, format!("data[{i}] is not finite")));
    }
    record.to_matrix().map_err(|m| error(1, 1, m))
}

fn parse_text(input: &str) -> Result<Matrix, ParseError> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut first_line = 0;
    for (n, line) in input.lines().enumerate() {
        let line_no = n + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut row = Vec::new();
        let mut rest = line;
        let mut offset = 0;
        while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
            let token_rest = &rest[start..];
            let len = token_rest.find(char::is_whitespace).unwrap_or(token_rest.len());
            let token = &token_rest[..len];
            let column = line[..offset + start].chars().count() + 1;
            let value: f64 = token
                .parse()
                .map_err(|_| error(line_no, column, format!("`{token}` is not a number")))?;
            if !value.is_finite() {
                return Err(error(line_no, column, format!("`{token}` is not finite")));
            }
            row.push(value);
            offset += start + len;
            rest = &token_rest[len..];
        }
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(error(
                    line_no,
                    1,
                    format!("row has {} entries, line {first_line} has {}", row.len(), first.len()),
                ));
            }
        } else {
            first_line = line_no;
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(error(1, 1, "no matrix rows"));
    }
    Matrix::from_rows(&rows).map_err(|e| error(first_line, 1, e.to_string()))
}

/// Plain-text rendering, one row per line, values in `%.12g` style.
pub fn matrix_to_text(m: &Matrix) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| crate::off::format_g(m[(i, j)])).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
