//! Text formats for matrices.
//!
//! Both formats are comma separated, one matrix row per line; blank lines and
//! lines starting with `#` are ignored. Entries are decimals (`2.5`, `-1e-3`)
//! or complex literals (`1.5-2i`).
//!
//! * `csv-dense`: `n` rows of `n` entries.
//! * `csv-upper-triangular-symmetric`: row `i` holds the diagonal entry and
//!   everything to its right (`n - i` entries, leading empty fields allowed);
//!   the lower triangle is filled in by symmetry.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatrixFormat {
    CsvDense,
    CsvUpperTriangularSymmetric,
}

impl MatrixFormat {
    /// Guesses the format from the row lengths: equal lengths mean dense,
    /// lengths `n, n-1, .., 1` mean upper triangular.
    pub fn detect(text: &str) -> Result<Self> {
        let rows = split_rows(text)?;
        let n = rows.first().map_or(0, Vec::len);
        if rows.iter().all(|r| r.len() == n) {
            Ok(Self::CsvDense)
        } else if rows.iter().enumerate().all(|(i, r)| r.len() + i == n) {
            Ok(Self::CsvUpperTriangularSymmetric)
        } else {
            Err(Error::Parse(
                "row lengths fit neither the dense nor the upper-triangular layout".into(),
            ))
        }
    }
}

impl fmt::Display for MatrixFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::CsvDense => "csv-dense",
            Self::CsvUpperTriangularSymmetric => "csv-upper-triangular-symmetric",
        })
    }
}

impl FromStr for MatrixFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv-dense" => Ok(Self::CsvDense),
            "csv-upper-triangular-symmetric" => Ok(Self::CsvUpperTriangularSymmetric),
            other => Err(Error::Parse(format!("unknown matrix format `{other}`"))),
        }
    }
}

/// Parses one entry: a real decimal or a complex literal.
pub fn parse_scalar(s: &str) -> Result<Complex64> {
    let s = s.trim();
    let z = match s.parse::<f64>() {
        Ok(x) => Complex64::new(x, 0.0),
        Err(_) => s
            .parse::<Complex64>()
            .map_err(|_| Error::Parse(format!("`{s}` is not a number")))?,
    };
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Parse(format!("`{s}` is not finite")));
    }
    Ok(z)
}

/// Splits into rows of entries, dropping comments, blank lines and empty
/// fields (the padding of the triangular layout).
fn split_rows(text: &str) -> Result<Vec<Vec<Complex64>>> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = line
            .split(',')
            .map(str::trim)
            .filter(|f| !f.is_empty())
            .map(|f| {
                parse_scalar(f).map_err(|e| match e {
                    Error::Parse(msg) => Error::Parse(format!("line {}: {msg}", lineno + 1)),
                    other => other,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse("no matrix rows".into()));
    }
    Ok(rows)
}

pub fn parse_matrix(text: &str, format: MatrixFormat) -> Result<Matrix> {
    let rows = split_rows(text)?;
    let n = rows.len();
    match format {
        MatrixFormat::CsvDense => {
            if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
                return Err(Error::Parse(format!(
                    "row {} has {} entries; a {n}x{n} matrix needs {n}",
                    i + 1,
                    r.len()
                )));
            }
            Matrix::from_rows(&rows)
        }
        MatrixFormat::CsvUpperTriangularSymmetric => {
            if let Some((i, r)) = rows.iter().enumerate().find(|(i, r)| r.len() + i != n) {
                return Err(Error::Parse(format!(
                    "row {} has {} entries; upper-triangular row {} of {n} needs {}",
                    i + 1,
                    r.len(),
                    i + 1,
                    n - i
                )));
            }
            Ok(Matrix::from_fn(n, |i, j| {
                let (r, c) = if i <= j { (i, j) } else { (j, i) };
                rows[r][c - r]
            }))
        }
    }
}

/// Reads a matrix file; `None` detects the format from the row lengths.
pub fn read_matrix(path: &Path, format: Option<MatrixFormat>) -> Result<Matrix> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let format = match format {
        Some(f) => f,
        None => MatrixFormat::detect(&text)?,
    };
    parse_matrix(&text, format)
}

fn format_scalar(z: Complex64) -> String {
    if z.im == 0.0 {
        // `{}` on f64 prints the shortest string that parses back exactly.
        format!("{}", z.re)
    } else {
        format!("{}", z)
    }
}

pub fn write_dense(m: &Matrix) -> String {
    let mut out = String::new();
    for i in 0..m.n() {
        let row: Vec<String> = m.row(i).iter().map(|&z| format_scalar(z)).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
