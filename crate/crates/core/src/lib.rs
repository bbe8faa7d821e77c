//! Exact cohomology of finite double complexes and a Hodge-diamond calculus.
//!
//! The crate has two layers:
//!
//! * a chain level, where a [`DoubleComplex`] over ℚ(i) (optionally with a
//!   real structure) yields Dolbeault, conjugate Dolbeault, Bott-Chern,
//!   Aeppli and total (de Rham) cohomology by exact Gaussian elimination,
//!   together with the ∂∂̄-lemma decision, morphisms, E₁-isomorphisms and
//!   long exact sequences;
//! * a dimension level, where a [`HodgePolynomial`] records a Hodge diamond
//!   and the product, projective-bundle, flag-bundle and blow-up formulas
//!   act on it, driven by a small construction language.
//!
//! Aeppli cohomology is included as the companion of Bott-Chern cohomology
//! even though only the latter enters the ∂∂̄ criterion.

pub mod cli;
pub mod complex;
pub mod constructions;
pub mod error;
pub mod fixtures;
pub mod hodge;
pub mod linalg;

/// A bidegree `(p, q)`.
pub type Bidegree = (i32, i32);

pub use complex::{CohomologyTable, DdbarDecision, DoubleComplex, Theory, ValidationReport};
pub use constructions::{LongExactSequence, Morphism};
pub use error::{ComplexError, EvalError, FormatError, HodgeError, MorphismError, ParseError};
pub use hodge::{ConstructionExpr, DdbarFlag, HodgePolynomial};
pub use linalg::{Matrix, Scalar};
