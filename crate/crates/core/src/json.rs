//! JSON wire formats.
//!
//! Sequences: `{"mode": "rational"|"float", "entries": ["p/q", ...] | [x, ...]}`.
//! Rational entries are canonical `"p/q"` strings and round-trip bit-exactly.
//! Triangles: `{"n": N, "rows": [[m00], [m10, m11], ...]}`. Matrices:
//! `{"rows": N, "cols": M, "entries": [[...], ...], "family": tag?}`; the
//! scalar mode of triangles and matrices is carried by the entry type.

use num_rational::BigRational;
use serde_json::{json, Value};

use crate::domain::TriangleMatrix;
use crate::dual::{InfMatrix, MatrixFamily};
use crate::error::{Error, Result};
use crate::scalar::{Mode, Scalar};
use crate::seq::Seq;

/// A sequence in either scalar mode, as read from the wire.
#[derive(Debug, Clone, PartialEq)]
pub enum AnySeq {
    Rational(Seq<BigRational>),
    Float(Seq<f64>),
}

impl AnySeq {
    pub fn mode(&self) -> Mode {
        match self {
            AnySeq::Rational(_) => Mode::Rational,
            AnySeq::Float(_) => Mode::Float,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            AnySeq::Rational(s) => s.len(),
            AnySeq::Float(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_json(&self) -> Value {
        match self {
            AnySeq::Rational(s) => seq_to_json(s),
            AnySeq::Float(s) => seq_to_json(s),
        }
    }
}

pub fn seq_to_json<S: Scalar>(s: &Seq<S>) -> Value {
    json!({
        "mode": S::MODE.label(),
        "entries": s.entries().iter().map(Scalar::to_json).collect::<Vec<_>>(),
    })
}

fn entries_from_json<S: Scalar>(entries: &[Value]) -> Result<Vec<S>> {
    entries.iter().map(S::from_json).collect()
}

pub fn seq_from_json(v: &Value) -> Result<AnySeq> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("sequence JSON must be an object".into()))?;
    let mode = obj
        .get("mode")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("sequence JSON needs a \"mode\" field".into()))?;
    let entries = obj
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("sequence JSON needs an \"entries\" array".into()))?;
    match mode {
        "rational" => Ok(AnySeq::Rational(Seq::new(entries_from_json(entries)?))),
        "float" => Ok(AnySeq::Float(Seq::new(entries_from_json(entries)?))),
        other => Err(Error::Parse(format!("unknown mode {other:?}"))),
    }
}

pub fn triangle_to_json<S: Scalar>(t: &TriangleMatrix<S>) -> Value {
    json!({
        "n": t.dim(),
        "rows": t
            .rows()
            .iter()
            .map(|r| r.iter().map(Scalar::to_json).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

pub fn triangle_from_json<S: Scalar>(v: &Value) -> Result<TriangleMatrix<S>> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("triangle JSON must be an object".into()))?;
    let n = obj
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("triangle JSON needs an \"n\" field".into()))?;
    let rows = obj
        .get("rows")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("triangle JSON needs a \"rows\" array".into()))?;
    if rows.len() != n as usize {
        return Err(Error::Parse("triangle row count disagrees with n".into()));
    }
    let rows: Result<Vec<Vec<S>>> = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::Parse("triangle rows must be arrays".into()))
                .and_then(|r| entries_from_json(r))
        })
        .collect();
    TriangleMatrix::from_rows(rows?)
}

/// A matrix truncation in either scalar mode.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyMatrix {
    Rational(InfMatrix<BigRational>),
    Float(InfMatrix<f64>),
}

impl AnyMatrix {
    pub fn mode(&self) -> Mode {
        match self {
            AnyMatrix::Rational(_) => Mode::Rational,
            AnyMatrix::Float(_) => Mode::Float,
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        match self {
            AnyMatrix::Rational(m) => (m.rows(), m.cols()),
            AnyMatrix::Float(m) => (m.rows(), m.cols()),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            AnyMatrix::Rational(m) => matrix_to_json(m),
            AnyMatrix::Float(m) => matrix_to_json(m),
        }
    }
}

pub fn matrix_to_json<S: Scalar>(m: &InfMatrix<S>) -> Value {
    let mut v = json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": m
            .entry_rows()
            .iter()
            .map(|r| r.iter().map(Scalar::to_json).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    });
    if let Some(f) = m.family() {
        v["family"] = json!(f.label());
    }
    v
}

pub fn matrix_from_json(v: &Value) -> Result<AnyMatrix> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("matrix JSON must be an object".into()))?;
    let entries = obj
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("matrix JSON needs an \"entries\" array".into()))?;
    let family = match obj.get("family") {
        Some(Value::String(s)) => Some(MatrixFamily::parse(s)?),
        Some(Value::Null) | None => None,
        Some(other) => return Err(Error::Parse(format!("bad family tag {other}"))),
    };
    let first = entries
        .first()
        .and_then(Value::as_array)
        .and_then(|r| r.first())
        .ok_or_else(|| Error::Parse("matrix entries must be non-empty".into()))?;
    let rational = first.is_string();
    let parse_rows = |value_rows: &[Value]| -> Result<Vec<Vec<Value>>> {
        value_rows
            .iter()
            .map(|r| {
                r.as_array()
                    .map(|a| a.to_vec())
                    .ok_or_else(|| Error::Parse("matrix rows must be arrays".into()))
            })
            .collect()
    };
    let value_rows = parse_rows(entries)?;
    let check_dims = |rows: usize, cols: usize| -> Result<()> {
        let want_rows = obj.get("rows").and_then(Value::as_u64);
        let want_cols = obj.get("cols").and_then(Value::as_u64);
        if want_rows.is_some_and(|r| r as usize != rows)
            || want_cols.is_some_and(|c| c as usize != cols)
        {
            return Err(Error::Parse(
                "matrix dims disagree with the entries array".into(),
            ));
        }
        Ok(())
    };
    if rational {
        let rows: Result<Vec<Vec<BigRational>>> =
            value_rows.iter().map(|r| entries_from_json(r)).collect();
        let m = InfMatrix::new(rows?, family)?;
        check_dims(m.rows(), m.cols())?;
        Ok(AnyMatrix::Rational(m))
    } else {
        let rows: Result<Vec<Vec<f64>>> = value_rows.iter().map(|r| entries_from_json(r)).collect();
        let m = InfMatrix::new(rows?, family)?;
        check_dims(m.rows(), m.cols())?;
        Ok(AnyMatrix::Float(m))
    }
}
