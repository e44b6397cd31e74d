//! JSON encodings shared by the CLI.
//!
//! Big numbers always travel as decimal strings so they round-trip exactly.
//! Rationals are `"p/q"` in lowest terms, or a plain integer string when the
//! denominator is one.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};
use thiserror::Error;

use tridiag_core::family::FamilySpec;
use tridiag_core::{BigInt, BigRational, Poly, PolyMatrix, ProductFactors, RatMatrix};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Core(#[from] tridiag_core::Error),
}

fn shape<T>(msg: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError::Shape(msg.into()))
}

pub fn int_to_json(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

pub fn rat_to_json(x: &BigRational) -> Value {
    Value::String(if x.is_integer() { x.numer().to_string() } else { format!("{}/{}", x.numer(), x.denom()) })
}

pub fn parse_int(v: &Value) -> Result<BigInt, FormatError> {
    match v {
        Value::String(s) => s.trim().parse().or_else(|_| shape(format!("not a decimal integer: {s:?}"))),
        other => shape(format!("expected a decimal string, got {other}")),
    }
}

pub fn parse_rat(v: &Value) -> Result<BigRational, FormatError> {
    let Value::String(s) = v else {
        return shape(format!("expected a rational string, got {v}"));
    };
    let bad = || FormatError::Shape(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q == BigInt::from(0) {
                return shape(format!("zero denominator in {s:?}"));
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

/// Ascending coefficient list, e.g. `t^2 - 10t + 25` as `["25","-10","1"]`.
pub fn poly_to_json(p: &Poly) -> Value {
    Value::Array(p.coeffs().iter().map(int_to_json).collect())
}

pub fn poly_from_json(v: &Value) -> Result<Poly, FormatError> {
    let Value::Array(items) = v else {
        return shape("polynomial must be a list of decimal strings");
    };
    Ok(Poly::new(items.iter().map(parse_int).collect::<Result<_, _>>()?))
}

pub fn factors_to_json(f: &ProductFactors) -> Value {
    let items = f.factors().iter().map(|(root, mult)| json!({ "root": root.to_string(), "mult": mult })).collect();
    json!({ "factors": Value::Array(items) })
}

/// A matrix file: `{"n": N, "kind": "int"|"rat"|"poly", "entries": [[...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatrixData {
    /// Integer or rational entries.
    Rat(RatMatrix),
    Poly(PolyMatrix),
}

pub fn rat_matrix_to_json(m: &RatMatrix) -> Value {
    let kind = if m.is_integral() { "int" } else { "rat" };
    let entries: Vec<Value> = m.rows().map(|row| Value::Array(row.iter().map(rat_to_json).collect())).collect();
    let mut out = Map::new();
    out.insert("n".into(), json!(m.n()));
    out.insert("kind".into(), json!(kind));
    out.insert("entries".into(), Value::Array(entries));
    Value::Object(out)
}

pub fn poly_matrix_to_json(m: &PolyMatrix) -> Value {
    let entries: Vec<Value> = m.rows().map(|row| Value::Array(row.iter().map(poly_to_json).collect())).collect();
    let mut out = Map::new();
    out.insert("n".into(), json!(m.n()));
    out.insert("kind".into(), json!("poly"));
    out.insert("entries".into(), Value::Array(entries));
    Value::Object(out)
}

pub fn matrix_from_json(v: &Value) -> Result<MatrixData, FormatError> {
    let n = v.get("n").and_then(Value::as_u64).ok_or_else(|| FormatError::Shape("missing integer field \"n\"".into()))?
        as usize;
    if n == 0 {
        return shape("matrix side must be positive");
    }
    let kind = v.get("kind").and_then(Value::as_str).ok_or_else(|| FormatError::Shape("missing field \"kind\"".into()))?;
    let Some(Value::Array(rows)) = v.get("entries") else {
        return shape("missing list field \"entries\"");
    };
    if rows.len() != n {
        return shape(format!("expected {n} rows, found {}", rows.len()));
    }
    let cells = |row: &Value| -> Result<Vec<Value>, FormatError> {
        match row {
            Value::Array(c) if c.len() == n => Ok(c.clone()),
            _ => shape(format!("every row must be a list of {n} entries")),
        }
    };
    match kind {
        "int" | "rat" => {
            let mut out = Vec::with_capacity(n);
            for row in rows {
                let parsed: Vec<BigRational> = cells(row)?
                    .iter()
                    .map(|c| if kind == "int" { parse_int(c).map(BigRational::from_integer) } else { parse_rat(c) })
                    .collect::<Result<_, _>>()?;
                out.push(parsed);
            }
            Ok(MatrixData::Rat(RatMatrix::from_rows(out)?))
        }
        "poly" => {
            let mut out = Vec::with_capacity(n);
            for row in rows {
                out.push(cells(row)?.iter().map(poly_from_json).collect::<Result<Vec<_>, _>>()?);
            }
            Ok(MatrixData::Poly(PolyMatrix::from_rows(out)?))
        }
        other => shape(format!("unknown matrix kind {other:?}")),
    }
}

/// `{"n": N, "r": "p/q", "b": [...], "a": {"1": [...], ...}, "b_next": "..."}`.
///
/// Omitted bands are zero; `b_next` is optional and defaults to zero.
pub fn family_to_json(f: &FamilySpec) -> Value {
    let bands: Map<String, Value> = f
        .bands()
        .iter()
        .map(|(s, band)| (s.to_string(), Value::Array(band.iter().map(rat_to_json).collect())))
        .collect();
    let mut out = Map::new();
    out.insert("n".into(), json!(f.n()));
    out.insert("r".into(), rat_to_json(f.r()));
    out.insert("b".into(), Value::Array(f.b_seq().iter().map(rat_to_json).collect()));
    out.insert("a".into(), Value::Object(bands));
    if *f.b_next() != BigRational::from_integer(0.into()) {
        out.insert("b_next".into(), rat_to_json(f.b_next()));
    }
    Value::Object(out)
}

pub fn family_from_json(v: &Value) -> Result<FamilySpec, FormatError> {
    let n = v.get("n").and_then(Value::as_u64).ok_or_else(|| FormatError::Shape("missing integer field \"n\"".into()))?
        as usize;
    let r = match v.get("r") {
        Some(r) => parse_rat(r)?,
        None => return shape("missing field \"r\""),
    };
    let Some(Value::Array(b)) = v.get("b") else {
        return shape("missing list field \"b\"");
    };
    let b = b.iter().map(parse_rat).collect::<Result<Vec<_>, _>>()?;
    let mut a = BTreeMap::new();
    match v.get("a") {
        None | Some(Value::Null) => {}
        Some(Value::Object(bands)) => {
            for (key, band) in bands {
                let s: usize = key.parse().or_else(|_| shape(format!("band key {key:?} is not an integer")))?;
                let Value::Array(items) = band else {
                    return shape(format!("band {key} must be a list"));
                };
                a.insert(s, items.iter().map(parse_rat).collect::<Result<Vec<_>, _>>()?);
            }
        }
        Some(_) => return shape("field \"a\" must be an object keyed by band index"),
    }
    let mut spec = FamilySpec::new(n, r, b, a)?;
    if let Some(next) = v.get("b_next") {
        spec = spec.with_b_next(parse_rat(next)?);
    }
    Ok(spec)
}
