//! Canonical JSON form of a double complex.
//!
//! ```json
//! {
//!   "d1": [[p, q, [["1", "0"], ["i", "-1/2"]]], ...],
//!   "d2": [...],
//!   "dims": [[p, q, dim], ...],
//!   "labels": [[p, q, ["ω1", ...]], ...],
//!   "sigma": [...]
//! }
//! ```
//!
//! Matrices are row-major arrays of scalar strings in the canonical
//! `a/b+c/di` form. Absent blocks are zero; `labels` and `sigma` are
//! optional. The writer emits keys in sorted order, entries sorted by
//! bidegree, and one entry per line.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::DoubleComplex;
use crate::error::{ComplexError, FormatError};
use crate::linalg::{Matrix, Scalar};
use crate::Bidegree;

type BlockEntry = (i32, i32, Vec<Vec<String>>);

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexFile {
    #[serde(default)]
    d1: Vec<BlockEntry>,
    #[serde(default)]
    d2: Vec<BlockEntry>,
    dims: Vec<(i32, i32, usize)>,
    #[serde(default)]
    labels: Option<Vec<(i32, i32, Vec<String>)>>,
    #[serde(default)]
    sigma: Option<Vec<BlockEntry>>,
}

pub fn matrix_to_strings(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(Scalar::to_string).collect())
        .collect()
}

/// Parses a row-major string matrix. `expected` resolves the shape of an
/// empty array, which cannot carry its own column count.
pub fn matrix_from_strings(
    rows: &[Vec<String>],
    expected: (usize, usize),
    context: &str,
) -> Result<Matrix, FormatError> {
    if rows.iter().all(Vec::is_empty)
        && (expected.0 == 0 || expected.1 == 0)
        && (rows.len() == expected.0 || rows.is_empty())
    {
        return Ok(Matrix::zeros(expected.0, expected.1));
    }
    let parsed = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|s| {
                    s.parse::<Scalar>()
                        .map_err(|e| FormatError::Schema(format!("{context}: {e}")))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Matrix::from_rows(parsed)
        .ok_or_else(|| FormatError::Schema(format!("{context}: ragged matrix rows")))
}

fn entries(blocks: impl Iterator<Item = (Bidegree, Matrix)>) -> Vec<BlockEntry> {
    blocks
        .map(|((p, q), m)| (p, q, matrix_to_strings(&m)))
        .collect()
}

fn write_array<T: Serialize>(out: &mut String, key: &str, items: &[T], last: bool) {
    out.push_str(&format!("  \"{key}\": ["));
    for (i, item) in items.iter().enumerate() {
        out.push_str(if i == 0 { "\n    " } else { ",\n    " });
        out.push_str(&serde_json::to_string(item).expect("plain data serialises"));
    }
    if !items.is_empty() {
        out.push_str("\n  ");
    }
    out.push(']');
    out.push_str(if last { "\n" } else { ",\n" });
}

/// Byte-stable canonical serialisation.
pub fn to_canonical_string(k: &DoubleComplex) -> String {
    let d1 = entries(k.d1_blocks().map(|(b, m)| (b, m.clone())));
    let d2 = entries(k.d2_blocks().map(|(b, m)| (b, m.clone())));
    let dims: Vec<(i32, i32, usize)> = k.support().map(|((p, q), d)| (p, q, d)).collect();
    let labels: Vec<(i32, i32, Vec<String>)> = k
        .label_blocks()
        .map(|((p, q), l)| (p, q, l.to_vec()))
        .collect();
    let sigma = entries(k.sigma_blocks().map(|(b, m)| (b, m.clone())));

    let mut out = String::from("{\n");
    write_array(&mut out, "d1", &d1, false);
    write_array(&mut out, "d2", &d2, false);
    write_array(&mut out, "dims", &dims, !k.has_labels() && !k.has_sigma());
    if k.has_labels() {
        write_array(&mut out, "labels", &labels, !k.has_sigma());
    }
    if k.has_sigma() {
        write_array(&mut out, "sigma", &sigma, true);
    }
    out.push_str("}\n");
    out
}

/// JSON value of the canonical form, for embedding in larger documents.
pub fn to_value(k: &DoubleComplex) -> Value {
    serde_json::from_str(&to_canonical_string(k)).expect("canonical output is valid JSON")
}

fn build(file: ComplexFile) -> Result<DoubleComplex, FormatError> {
    let mut seen = BTreeSet::new();
    for &(p, q, _) in &file.dims {
        if !seen.insert((p, q)) {
            return Err(FormatError::Schema(format!(
                "duplicate dims entry at ({p},{q})"
            )));
        }
    }
    let mut k = DoubleComplex::new(file.dims.iter().map(|&(p, q, d)| ((p, q), d)));

    type Setter = fn(&mut DoubleComplex, i32, i32, Matrix) -> Result<(), ComplexError>;
    type Target = fn(Bidegree) -> Bidegree;
    let groups: [(&str, Vec<BlockEntry>, Setter, Target); 3] = [
        ("d1", file.d1, DoubleComplex::set_d1, |(p, q)| (p + 1, q)),
        ("d2", file.d2, DoubleComplex::set_d2, |(p, q)| (p, q + 1)),
        (
            "sigma",
            file.sigma.clone().unwrap_or_default(),
            DoubleComplex::set_sigma,
            |(p, q)| (q, p),
        ),
    ];
    if file.sigma.is_some() {
        k.enable_sigma();
    }
    for (name, blocks, set, target) in groups {
        let mut seen = BTreeSet::new();
        for (p, q, rows) in blocks {
            if !seen.insert((p, q)) {
                return Err(FormatError::Schema(format!(
                    "duplicate {name} block at ({p},{q})"
                )));
            }
            let (tp, tq) = target((p, q));
            let expected = (k.dim(tp, tq), k.dim(p, q));
            let m = matrix_from_strings(&rows, expected, &format!("{name} block at ({p},{q})"))?;
            set(&mut k, p, q, m)?;
        }
    }
    for (p, q, l) in file.labels.unwrap_or_default() {
        k.set_labels(p, q, l)?;
    }
    Ok(k)
}

/// Parses without running the axiom checks (shape errors are still
/// reported).
pub fn from_str_unvalidated(text: &str) -> Result<DoubleComplex, FormatError> {
    build(serde_json::from_str(text)?)
}

pub fn from_value_unvalidated(value: Value) -> Result<DoubleComplex, FormatError> {
    build(serde_json::from_value(value)?)
}

/// Parses and validates.
pub fn from_str(text: &str) -> Result<DoubleComplex, FormatError> {
    let k = from_str_unvalidated(text)?;
    k.ensure_valid()?;
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{dot, iwasawa, square};

    #[test]
    fn round_trip_preserves_everything() {
        for k in [dot(0, 0), square(1, 1), iwasawa()] {
            let text = to_canonical_string(&k);
            let back = from_str(&text).unwrap();
            assert_eq!(back, k);
            assert_eq!(to_canonical_string(&back), text);
        }
    }

    #[test]
    fn dot_text_is_canonical() {
        let text = to_canonical_string(&dot(0, 0));
        assert_eq!(
            text,
            "{\n  \"d1\": [],\n  \"d2\": [],\n  \"dims\": [\n    [0,0,1]\n  ],\n  \"sigma\": [\n    [0,0,[[\"1\"]]]\n  ]\n}\n"
        );
    }

    #[test]
    fn truncated_file_is_a_parse_error() {
        let text = to_canonical_string(&square(0, 0));
        let cut = &text[..text.len() / 2];
        assert!(matches!(from_str(cut), Err(FormatError::Parse { .. })));
    }

    #[test]
    fn d_squared_violation_is_reported() {
        let text = r#"{"dims": [[0,0,1],[1,0,1],[2,0,1]],
                       "d1": [[0,0,[["1"]]],[1,0,[["1"]]]]}"#;
        match from_str(text) {
            Err(FormatError::Complex(ComplexError::Invalid(r))) => {
                assert_eq!(r.violations[0].bidegree, (0, 0));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn schema_errors() {
        assert!(matches!(
            from_str(r#"{"dims": [[0,0,1]], "d1": [[0,0,[["x"]]]]}"#),
            Err(FormatError::Schema(_))
        ));
        assert!(matches!(
            from_str(r#"{"dims": [[0,0,1],[0,0,2]]}"#),
            Err(FormatError::Schema(_))
        ));
        assert!(matches!(
            from_str(r#"{"dims": [[0,0,1]], "extra": 1}"#),
            Err(FormatError::Schema(_))
        ));
        assert!(matches!(
            from_str(r#"{"dims": [[0,0,1],[1,0,1]], "d1": [[0,0,[["1","2"]]]]}"#),
            Err(FormatError::Complex(ComplexError::Malformed { .. }))
        ));
    }

    #[test]
    fn negative_bidegrees_and_empty_blocks() {
        let text = r#"{"dims": [[-1,-2,1]], "d1": [[-1,-2,[]]]}"#;
        let k = from_str(text).unwrap();
        assert_eq!(k.dim(-1, -2), 1);
    }
}
