//! JSON form of morphisms and short exact sequences.
//!
//! ```json
//! {
//!   "source": { ...double complex... } | "path/to/complex.json",
//!   "target": ...,
//!   "blocks": [[p, q, [["1"]]], ...],
//!   "real": true
//! }
//! ```
//!
//! A short exact sequence is an array `[f, g]` of two morphisms. Relative
//! paths are resolved against the directory of the file being read.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use serde::Deserialize;
use serde_json::{json, Value};

use super::{LongExactSequence, Morphism};
use crate::complex::json::{from_value_unvalidated, matrix_from_strings, matrix_to_strings};
use crate::error::FormatError;
use crate::DoubleComplex;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MorphismFile {
    source: Value,
    target: Value,
    #[serde(default)]
    blocks: Vec<(i32, i32, Vec<Vec<String>>)>,
    #[serde(default)]
    real: bool,
}

fn read(path: &Path) -> Result<String, FormatError> {
    fs::read_to_string(path).map_err(|e| FormatError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn complex_ref(v: Value, base: &Path) -> Result<DoubleComplex, FormatError> {
    let k = match v {
        Value::String(p) => {
            let path = base.join(p);
            crate::complex::json::from_str_unvalidated(&read(&path)?)?
        }
        Value::Object(_) => from_value_unvalidated(v)?,
        _ => {
            return Err(FormatError::Schema(
                "source/target must be a complex object or a file path".into(),
            ))
        }
    };
    k.ensure_valid()?;
    Ok(k)
}

pub fn morphism_from_value(v: Value, base: &Path) -> Result<Morphism, FormatError> {
    let file: MorphismFile = serde_json::from_value(v)?;
    let source = complex_ref(file.source, base)?;
    let target = complex_ref(file.target, base)?;
    let mut seen = BTreeSet::new();
    let mut blocks = Vec::new();
    for (p, q, rows) in file.blocks {
        if !seen.insert((p, q)) {
            return Err(FormatError::Schema(format!("duplicate block at ({p},{q})")));
        }
        let expected = (target.dim(p, q), source.dim(p, q));
        blocks.push((
            (p, q),
            matrix_from_strings(&rows, expected, &format!("block at ({p},{q})"))?,
        ));
    }
    let f = if file.real {
        Morphism::new_real(source, target, blocks)?
    } else {
        Morphism::new(source, target, blocks)?
    };
    Ok(f)
}

pub fn morphism_from_str(text: &str, base: &Path) -> Result<Morphism, FormatError> {
    morphism_from_value(serde_json::from_str(text)?, base)
}

pub fn morphism_to_value(f: &Morphism) -> Value {
    let blocks: Vec<Value> = f
        .blocks()
        .map(|((p, q), m)| json!([p, q, matrix_to_strings(m)]))
        .collect();
    json!({
        "blocks": blocks,
        "real": f.is_real(),
        "source": crate::complex::json::to_value(f.source()),
        "target": crate::complex::json::to_value(f.target()),
    })
}

/// Reads `[f, g]`.
pub fn ses_from_str(text: &str, base: &Path) -> Result<(Morphism, Morphism), FormatError> {
    let v: Value = serde_json::from_str(text)?;
    match v {
        Value::Array(items) if items.len() == 2 => {
            let mut it = items.into_iter();
            let f = morphism_from_value(it.next().expect("two"), base)?;
            let g = morphism_from_value(it.next().expect("two"), base)?;
            Ok((f, g))
        }
        _ => Err(FormatError::Schema(
            "a short exact sequence is an array of two morphisms".into(),
        )),
    }
}

pub fn ses_from_path(path: &Path) -> Result<(Morphism, Morphism), FormatError> {
    let base = path.parent().unwrap_or(Path::new("."));
    ses_from_str(&read(path)?, base)
}

pub fn ses_to_string(f: &Morphism, g: &Morphism) -> String {
    let v = Value::Array(vec![morphism_to_value(f), morphism_to_value(g)]);
    let mut s = serde_json::to_string_pretty(&v).expect("plain data");
    s.push('\n');
    s
}

pub fn les_to_value(les: &LongExactSequence) -> Value {
    let terms: Vec<Value> = les
        .terms
        .iter()
        .map(|t| json!({"slot": t.slot.to_string(), "degree": t.degree, "dim": t.dim}))
        .collect();
    let connecting: Vec<Value> = les
        .connecting_maps()
        .map(|(n, m)| json!({"degree": n, "matrix": matrix_to_strings(m)}))
        .collect();
    json!({
        "connecting": connecting,
        "direction": match les.direction {
            super::Direction::Row => "row",
            super::Direction::Column => "column",
        },
        "exact": les.is_exact(),
        "fixed": les.fixed,
        "terms": terms,
    })
}
