//! The on-disk complex format.
//!
//! A JSON document:
//!
//! ```json
//! {
//!   "field": "Q",
//!   "cells": [{"p": 0, "q": 0, "dim": 1}, {"p": 1, "q": 0, "dim": 1}],
//!   "d1": [{"p": 0, "q": 0, "matrix": [[1]]}],
//!   "d2": []
//! }
//! ```
//!
//! `field` is `"Q"` or `{"Fp": p}`. Matrices are row-major; the matrix of
//! `d'_{p,q}` has `dim A^{p+1,q}` rows and `dim A^{p,q}` columns. Rational
//! entries are integers or `"a/b"` strings in lowest terms with `b > 0`;
//! prime-field entries are integers in `[0, p)`. Unknown fields are
//! rejected. The serializer emits a canonical form (cells and maps sorted,
//! zero cells and zero maps omitted), so parse and serialize round-trip
//! byte for byte.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Differential, DoubleComplex};
use crate::exactlin::{Field, FieldSpec, Matrix, PrimeField, Rationals};

/// A complex over a field chosen at runtime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyComplex {
    Rational(DoubleComplex<Rationals>),
    Prime(DoubleComplex<PrimeField>),
}

/// Runs `$body` with `$c` bound to the concrete complex inside an
/// [`AnyComplex`].
#[macro_export]
macro_rules! with_complex {
    ($any:expr, $c:ident => $body:expr) => {
        match $any {
            $crate::bicomplex::io::AnyComplex::Rational($c) => $body,
            $crate::bicomplex::io::AnyComplex::Prime($c) => $body,
        }
    };
}

impl AnyComplex {
    pub fn field_spec(&self) -> FieldSpec {
        with_complex!(self, c => c.field().spec())
    }

    pub fn to_document(&self) -> String {
        with_complex!(self, c => to_document(c))
    }
}

impl From<DoubleComplex<Rationals>> for AnyComplex {
    fn from(c: DoubleComplex<Rationals>) -> Self {
        AnyComplex::Rational(c)
    }
}

impl From<DoubleComplex<PrimeField>> for AnyComplex {
    fn from(c: DoubleComplex<PrimeField>) -> Self {
        AnyComplex::Prime(c)
    }
}

/// Parse failure with a location: `line L, column C` for syntax errors,
/// a JSON path such as `d1[0].matrix[1][0]` for content errors.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{location}: {message}")]
pub struct ParseError {
    pub location: String,
    pub message: String,
}

impl ParseError {
    fn at(location: impl Into<String>, message: impl fmt::Display) -> Self {
        Self { location: location.into(), message: message.to_string() }
    }
}

/// A matrix entry as written in the document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CellDoc {
    p: i32,
    q: i32,
    dim: usize,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapDoc {
    p: i32,
    q: i32,
    matrix: Vec<Vec<Entry>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexDoc {
    field: FieldSpec,
    cells: Vec<CellDoc>,
    #[serde(default)]
    d1: Vec<MapDoc>,
    #[serde(default)]
    d2: Vec<MapDoc>,
}

pub fn encode_entry<F: Field>(field: &F, x: &F::Elem) -> Entry {
    let s = field.format(x);
    match s.parse::<i64>() {
        Ok(i) => Entry::Int(i),
        Err(_) => Entry::Text(s),
    }
}

pub fn decode_entry<F: Field>(field: &F, e: &Entry) -> Result<F::Elem, String> {
    match e {
        Entry::Int(i) => field.parse(&i.to_string()).map_err(|err| err.to_string()),
        Entry::Text(_) if matches!(field.spec(), FieldSpec::PrimeField(_)) => {
            Err("prime-field entries must be integers".to_string())
        }
        Entry::Text(s) => field.parse(s).map_err(|err| err.to_string()),
    }
}

pub fn encode_matrix<F: Field>(m: &Matrix<F>) -> Vec<Vec<Entry>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| encode_entry(m.field(), x)).collect())
        .collect()
}

/// Decodes a row-major matrix; `cols` is used when there are no rows.
pub fn decode_matrix<F: Field>(
    field: &F,
    rows: &[Vec<Entry>],
    cols: usize,
    location: &str,
) -> Result<Matrix<F>, ParseError> {
    let cols = rows.first().map_or(cols, Vec::len);
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        if row.len() != cols {
            return Err(ParseError::at(
                format!("{location}[{i}]"),
                format!("row has {} entries, expected {cols}", row.len()),
            ));
        }
        let decoded = row
            .iter()
            .enumerate()
            .map(|(j, e)| decode_entry(field, e).map_err(|m| ParseError::at(format!("{location}[{i}][{j}]"), m)))
            .collect::<Result<Vec<_>, _>>()?;
        out.push(decoded);
    }
    Ok(Matrix::from_rows(field.clone(), cols, out).expect("row widths checked"))
}

fn build<F: Field>(field: F, doc: &ComplexDoc) -> Result<DoubleComplex<F>, ParseError> {
    let mut seen = BTreeSet::new();
    let mut dims = Vec::new();
    for (i, cell) in doc.cells.iter().enumerate() {
        if cell.p < 0 || cell.q < 0 {
            return Err(ParseError::at(format!("cells[{i}]"), "negative bidegree"));
        }
        if !seen.insert((cell.p, cell.q)) {
            return Err(ParseError::at(format!("cells[{i}]"), format!("duplicate cell ({},{})", cell.p, cell.q)));
        }
        dims.push(((cell.p, cell.q), cell.dim));
    }
    let dim_of = |p: i32, q: i32| dims.iter().find(|(k, _)| *k == (p, q)).map_or(0, |(_, d)| *d);
    let maps = |name: &str, docs: &[MapDoc]| -> Result<Vec<_>, ParseError> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (i, m) in docs.iter().enumerate() {
            let loc = format!("{name}[{i}]");
            if m.p < 0 || m.q < 0 {
                return Err(ParseError::at(loc, "negative bidegree"));
            }
            if !seen.insert((m.p, m.q)) {
                return Err(ParseError::at(loc, format!("duplicate map at ({},{})", m.p, m.q)));
            }
            let matrix = decode_matrix(&field, &m.matrix, dim_of(m.p, m.q), &format!("{loc}.matrix"))?;
            out.push(((m.p, m.q), matrix));
        }
        Ok(out)
    };
    let d1 = maps("d1", &doc.d1)?;
    let d2 = maps("d2", &doc.d2)?;
    DoubleComplex::new(field.clone(), dims.clone(), d1, d2).map_err(|e| ParseError::at("document", e))
}

/// Parses a complex document. Shapes and axioms are not checked; call
/// `validate` on the result.
pub fn parse_complex(text: &str) -> Result<AnyComplex, ParseError> {
    let doc: ComplexDoc = serde_json::from_str(text)
        .map_err(|e| ParseError::at(format!("line {}, column {}", e.line(), e.column()), e))?;
    match doc.field {
        FieldSpec::Rationals => Ok(AnyComplex::Rational(build(Rationals, &doc)?)),
        FieldSpec::PrimeField(p) => {
            let field = PrimeField::new(p).map_err(|e| ParseError::at("field", e))?;
            Ok(AnyComplex::Prime(build(field, &doc)?))
        }
    }
}

/// Canonical document for `c`, ending in a newline.
pub fn to_document<F: Field>(c: &DoubleComplex<F>) -> String {
    let maps = |which| {
        c.stored_maps(which)
            .iter()
            .map(|(&(p, q), m)| MapDoc { p, q, matrix: encode_matrix(m) })
            .collect()
    };
    let doc = ComplexDoc {
        field: c.field().spec(),
        cells: c.cells().map(|((p, q), dim)| CellDoc { p, q, dim }).collect(),
        d1: maps(Differential::Horizontal),
        d2: maps(Differential::Vertical),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("complex documents always serialize");
    s.push('\n');
    s
}
