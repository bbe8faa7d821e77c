use thiserror::Error;

use crate::complex::ValidationReport;
use crate::Bidegree;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid scalar literal {0:?}")]
pub struct ScalarParseError(pub String);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("ambient mismatch: expected {expected} rows, found {found}")]
    AmbientMismatch { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    /// A block whose shape disagrees with the support.
    #[error("malformed complex: {block} block at {bidegree:?} has shape {found:?}, expected {expected:?}")]
    Malformed {
        block: &'static str,
        bidegree: Bidegree,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("malformed complex: {0}")]
    MalformedLabels(String),
    /// All shapes are fine but at least one axiom fails.
    #[error("invalid double complex: {0}")]
    Invalid(ValidationReport),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("malformed morphism at {bidegree:?}: {reason}")]
    Malformed { bidegree: Bidegree, reason: String },
    #[error("morphism is not an E1-isomorphism")]
    NotE1Isomorphism,
    #[error("sequence is not short exact at {bidegree:?}: {reason}")]
    NotExact { bidegree: Bidegree, reason: String },
    #[error("invalid conjugate pairing: {0}")]
    InvalidPairing(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HodgeError {
    #[error("invalid rank {0}: projective bundles need rank >= 1")]
    InvalidRank(u32),
    #[error("invalid codimension {0}: blow-up centers need codimension >= 2")]
    InvalidCodimension(u32),
    #[error("center dimension {center} does not match ambient dimension {ambient} minus codimension {codim}")]
    CenterDimension {
        ambient: u32,
        center: u32,
        codim: u32,
    },
    #[error("blow-up center has the zero Hodge polynomial")]
    EmptyCenter,
    #[error("invalid flag type: {0}")]
    InvalidParts(String),
    #[error("coefficient at ({p},{q}) lies outside 0..={n}")]
    OutOfRange { p: u32, q: u32, n: u32 },
    #[error("leaf diamond must have h^(0,0) >= 1")]
    Disconnected,
    #[error("unknown leaf {name:?}; available: {available}")]
    UnknownLeaf { name: String, available: String },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

/// A failure inside a construction expression, tagged with where it
/// happened (e.g. `blowup/center/projbundle`).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at {path}: {source}")]
pub struct EvalError {
    pub path: String,
    pub source: HodgeError,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        if e.is_data() {
            FormatError::Schema(e.to_string())
        } else {
            FormatError::Parse {
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            }
        }
    }
}

/// Syntax errors from the construction language.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: expected {}, found {found}", expected.join(" or "))]
    Syntax {
        offset: usize,
        expected: Vec<String>,
        found: String,
    },
    #[error("arity error at byte {offset}: {name} takes {expected} arguments")]
    Arity {
        offset: usize,
        name: String,
        expected: usize,
    },
    #[error("unknown leaf {name:?} at byte {offset}")]
    UnknownLeaf { offset: usize, name: String },
    #[error("invalid diamond literal at byte {offset}: {source}")]
    Diamond { offset: usize, source: HodgeError },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::Arity { offset, .. }
            | ParseError::UnknownLeaf { offset, .. }
            | ParseError::Diamond { offset, .. } => *offset,
        }
    }
}
