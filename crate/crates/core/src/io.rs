//! Matrix and vector files.
//!
//! JSON matrix files look like
//! `{"n": 3, "scalar": "rational", "rows": [["1/3", "2/3", "0"], …]}` with
//! `rows[i][j] = a_ij`. Entries may be strings or JSON numbers; `n` and
//! `scalar` are optional. Plain CSV (one row per line) is accepted too, with
//! `n` inferred from the row count.
//!
//! When `scalar` is absent the backend is inferred: any decimal literal
//! selects floats, any `p/q` selects rationals, and all-integer files fall
//! back to `STOKIT_PRECISION` (default `rational`).

use std::path::Path;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::scalar::{format_scalar, parse_float, parse_rational, parse_scalar, Backend, Number, Scalar};

pub const PRECISION_ENV: &str = "STOKIT_PRECISION";
pub const MAX_N: usize = 128;

/// A matrix on whichever backend its file asked for.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyMatrix {
    Rational(Matrix<BigRational>),
    Float(Matrix<f64>),
}

impl AnyMatrix {
    pub fn backend(&self) -> Backend {
        match self {
            AnyMatrix::Rational(_) => Backend::Rational,
            AnyMatrix::Float(_) => Backend::Float,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            AnyMatrix::Rational(m) => m.n(),
            AnyMatrix::Float(m) => m.n(),
        }
    }

    pub fn transpose(&self) -> Self {
        match self {
            AnyMatrix::Rational(m) => AnyMatrix::Rational(m.transpose()),
            AnyMatrix::Float(m) => AnyMatrix::Float(m.transpose()),
        }
    }

    pub fn to_file(&self) -> MatrixFile {
        match self {
            AnyMatrix::Rational(m) => MatrixFile::from_matrix(m),
            AnyMatrix::Float(m) => MatrixFile::from_matrix(m),
        }
    }
}

/// Serialized matrix, as written by every command that emits one.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatrixFile {
    pub n: usize,
    pub scalar: Backend,
    pub rows: Vec<Vec<String>>,
}

impl MatrixFile {
    pub fn from_matrix<T: Scalar>(m: &Matrix<T>) -> Self {
        MatrixFile {
            n: m.n(),
            scalar: T::BACKEND,
            rows: m.rows().map(|row| row.iter().map(|x| render(x)).collect()).collect(),
        }
    }
}

pub fn render<T: Scalar>(x: &T) -> String {
    format_scalar(&x.clone().into_number())
}

pub fn render_vector<T: Scalar>(v: &Vector<T>) -> Vec<String> {
    v.iter().map(render).collect()
}

#[derive(Deserialize)]
struct RawMatrixFile {
    n: Option<usize>,
    scalar: Option<String>,
    rows: Vec<Vec<serde_json::Value>>,
}

fn cell_text(v: &serde_json::Value) -> Result<String> {
    match v {
        serde_json::Value::String(s) => Ok(s.clone()),
        serde_json::Value::Number(n) => Ok(n.to_string()),
        other => Err(Error::Parse(format!("unsupported matrix entry {other}"))),
    }
}

/// Backend selected by `STOKIT_PRECISION`, defaulting to rational.
pub fn env_backend() -> Result<Backend> {
    match std::env::var(PRECISION_ENV) {
        Ok(v) if !v.trim().is_empty() => v.parse(),
        _ => Ok(Backend::Rational),
    }
}

fn infer_backend(cells: &[Number], fallback: Backend) -> Backend {
    if cells.iter().any(|c| matches!(c, Number::Float(_))) {
        Backend::Float
    } else if cells.iter().any(|c| matches!(c, Number::Rational(r) if !r.is_integer())) {
        Backend::Rational
    } else {
        fallback
    }
}

fn build(rows: Vec<Vec<String>>, declared: Option<Backend>, fallback: Backend) -> Result<AnyMatrix> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::Parse("matrix has no rows".into()));
    }
    if n > MAX_N {
        return Err(Error::SizeLimit { n, max: MAX_N });
    }
    if let Some(bad) = rows.iter().find(|r| r.len() != n) {
        return Err(Error::Parse(format!("matrix is not square: {n} rows but a row of length {}", bad.len())));
    }
    let backend = match declared {
        Some(b) => b,
        None => {
            let cells = rows.iter().flatten().map(|c| parse_scalar(c)).collect::<Result<Vec<_>>>()?;
            infer_backend(&cells, fallback)
        }
    };
    Ok(match backend {
        Backend::Rational => AnyMatrix::Rational(Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|c| parse_rational(c)).collect()).collect::<Result<_>>()?,
        )?),
        Backend::Float => AnyMatrix::Float(Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|c| parse_float(c)).collect()).collect::<Result<_>>()?,
        )?),
    })
}

/// Parses JSON (if the text starts with `{`) or CSV matrix text.
pub fn parse_matrix(text: &str, fallback: Backend) -> Result<AnyMatrix> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let raw: RawMatrixFile = serde_json::from_str(trimmed).map_err(|e| Error::Parse(format!("matrix JSON: {e}")))?;
        let rows = raw
            .rows
            .iter()
            .map(|r| r.iter().map(cell_text).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        if let Some(n) = raw.n {
            if n != rows.len() {
                return Err(Error::Parse(format!("declared n = {n} but {} rows given", rows.len())));
            }
        }
        let declared = raw.scalar.as_deref().map(str::parse).transpose()?;
        build(rows, declared, fallback)
    } else {
        build(parse_csv_rows(text)?, None, fallback)
    }
}

fn parse_csv_rows(text: &str) -> Result<Vec<Vec<String>>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Parse(format!("matrix CSV: {e}")))?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        rows.push(record.iter().map(str::to_owned).collect());
    }
    Ok(rows)
}

pub fn read_matrix(path: &Path, fallback: Backend) -> Result<AnyMatrix> {
    let text = std::fs::read_to_string(path)?;
    parse_matrix(&text, fallback)
}

/// Parses a vector as a JSON array (strings or numbers) or as one line of
/// comma/whitespace separated literals.
pub fn parse_vector<T: Scalar>(text: &str) -> Result<Vector<T>> {
    let trimmed = text.trim();
    let cells: Vec<String> = if trimmed.starts_with('[') {
        let raw: Vec<serde_json::Value> =
            serde_json::from_str(trimmed).map_err(|e| Error::Parse(format!("vector JSON: {e}")))?;
        raw.iter().map(cell_text).collect::<Result<_>>()?
    } else {
        trimmed
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(str::to_owned)
            .collect()
    };
    let values = cells
        .iter()
        .map(|c| match T::BACKEND {
            Backend::Rational => parse_rational(c).map(|r| T::from_number(&Number::Rational(r))),
            Backend::Float => parse_float(c).map(|f| T::from_number(&Number::Float(f))),
        })
        .collect::<Result<Vec<T>>>()?;
    Vector::new(values).map_err(|_| Error::Parse("empty vector".into()))
}
