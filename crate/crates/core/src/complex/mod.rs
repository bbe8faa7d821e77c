//! Bounded double complexes `(K, ∂₁, ∂₂, σ)` over ℚ(i) and their
//! cohomology.
//!
//! Blocks are stored per bidegree: `d1(p, q)` maps `K^{p,q} → K^{p+1,q}`,
//! `d2(p, q)` maps `K^{p,q} → K^{p,q+1}` and `sigma(p, q)` maps
//! `K^{p,q} → K^{q,p}`. The real structure is antilinear: on a coordinate
//! vector `v` it acts as `sigma(p, q) · conj(v)`. Anything outside the
//! support is the zero space, and absent blocks are zero maps.

mod cohomology;
pub mod json;
mod validate;

use std::borrow::Cow;
use std::collections::BTreeMap;

pub use cohomology::{CohomologyTable, DdbarDecision, DdbarWitness, MapFailure, Theory};
pub use validate::{Axiom, ValidationReport, Violation};

use crate::error::ComplexError;
use crate::linalg::Matrix;
use crate::Bidegree;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DoubleComplex {
    dims: BTreeMap<Bidegree, usize>,
    d1: BTreeMap<Bidegree, Matrix>,
    d2: BTreeMap<Bidegree, Matrix>,
    sigma: Option<BTreeMap<Bidegree, Matrix>>,
    labels: Option<BTreeMap<Bidegree, Vec<String>>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Block {
    D1,
    D2,
    Sigma,
}

impl Block {
    fn name(self) -> &'static str {
        match self {
            Block::D1 => "d1",
            Block::D2 => "d2",
            Block::Sigma => "sigma",
        }
    }

    fn target(self, (p, q): Bidegree) -> Bidegree {
        match self {
            Block::D1 => (p + 1, q),
            Block::D2 => (p, q + 1),
            Block::Sigma => (q, p),
        }
    }
}

impl DoubleComplex {
    /// A complex with the given dimensions and zero differentials. Zero
    /// dimensions are dropped.
    pub fn new(dims: impl IntoIterator<Item = (Bidegree, usize)>) -> Self {
        Self {
            dims: dims.into_iter().filter(|&(_, d)| d > 0).collect(),
            ..Self::default()
        }
    }

    pub fn dim(&self, p: i32, q: i32) -> usize {
        self.dims.get(&(p, q)).copied().unwrap_or(0)
    }

    /// Nonzero bidegrees with their dimensions, in lexicographic order.
    pub fn support(&self) -> impl Iterator<Item = (Bidegree, usize)> + '_ {
        self.dims.iter().map(|(&b, &d)| (b, d))
    }

    pub fn bidegrees(&self) -> impl Iterator<Item = Bidegree> + '_ {
        self.dims.keys().copied()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// `(p_min, p_max, q_min, q_max)` of the support, `None` when empty.
    pub fn bounding_box(&self) -> Option<(i32, i32, i32, i32)> {
        let mut it = self.dims.keys();
        let &(p, q) = it.next()?;
        Some(it.fold((p, p, q, q), |(a, b, c, d), &(p, q)| {
            (a.min(p), b.max(p), c.min(q), d.max(q))
        }))
    }

    fn block_shape(&self, block: Block, at: Bidegree) -> (usize, usize) {
        let (tp, tq) = block.target(at);
        (self.dim(tp, tq), self.dim(at.0, at.1))
    }

    fn check_shape(&self, block: Block, at: Bidegree, m: &Matrix) -> Result<(), ComplexError> {
        let expected = self.block_shape(block, at);
        if m.shape() != expected {
            return Err(ComplexError::Malformed {
                block: block.name(),
                bidegree: at,
                expected,
                found: m.shape(),
            });
        }
        Ok(())
    }

    fn stored(&self, block: Block) -> Option<&BTreeMap<Bidegree, Matrix>> {
        match block {
            Block::D1 => Some(&self.d1),
            Block::D2 => Some(&self.d2),
            Block::Sigma => self.sigma.as_ref(),
        }
    }

    pub(crate) fn block(&self, block: Block, at: Bidegree) -> Cow<'_, Matrix> {
        match self.stored(block).and_then(|m| m.get(&at)) {
            Some(m) => Cow::Borrowed(m),
            None => {
                let (r, c) = self.block_shape(block, at);
                Cow::Owned(Matrix::zeros(r, c))
            }
        }
    }

    /// `∂₁ : K^{p,q} → K^{p+1,q}`.
    pub fn d1(&self, p: i32, q: i32) -> Cow<'_, Matrix> {
        self.block(Block::D1, (p, q))
    }

    /// `∂₂ : K^{p,q} → K^{p,q+1}`.
    pub fn d2(&self, p: i32, q: i32) -> Cow<'_, Matrix> {
        self.block(Block::D2, (p, q))
    }

    /// The real-structure block `K^{p,q} → K^{q,p}`, if the complex has one.
    pub fn sigma(&self, p: i32, q: i32) -> Option<Cow<'_, Matrix>> {
        self.sigma.as_ref()?;
        Some(self.block(Block::Sigma, (p, q)))
    }

    pub fn has_sigma(&self) -> bool {
        self.sigma.is_some()
    }

    pub fn labels(&self, p: i32, q: i32) -> Option<&[String]> {
        self.labels.as_ref()?.get(&(p, q)).map(Vec::as_slice)
    }

    pub fn has_labels(&self) -> bool {
        self.labels.is_some()
    }

    /// Stored nonzero blocks of the given kind.
    pub(crate) fn blocks(&self, block: Block) -> impl Iterator<Item = (Bidegree, &Matrix)> {
        self.stored(block)
            .into_iter()
            .flatten()
            .map(|(&b, m)| (b, m))
    }

    pub fn d1_blocks(&self) -> impl Iterator<Item = (Bidegree, &Matrix)> {
        self.blocks(Block::D1)
    }

    pub fn d2_blocks(&self) -> impl Iterator<Item = (Bidegree, &Matrix)> {
        self.blocks(Block::D2)
    }

    pub fn sigma_blocks(&self) -> impl Iterator<Item = (Bidegree, &Matrix)> {
        self.blocks(Block::Sigma)
    }

    pub fn label_blocks(&self) -> impl Iterator<Item = (Bidegree, &[String])> {
        self.labels
            .iter()
            .flatten()
            .map(|(&b, l)| (b, l.as_slice()))
    }

    fn insert(&mut self, block: Block, at: Bidegree, m: Matrix) -> Result<(), ComplexError> {
        self.check_shape(block, at, &m)?;
        let map = match block {
            Block::D1 => &mut self.d1,
            Block::D2 => &mut self.d2,
            Block::Sigma => self.sigma.get_or_insert_with(BTreeMap::new),
        };
        // zero maps between nonzero spaces are only kept for σ, where an
        // explicit zero block is data the validator must see
        if m.rows() == 0 || m.cols() == 0 || (block != Block::Sigma && m.is_zero()) {
            map.remove(&at);
        } else {
            map.insert(at, m);
        }
        Ok(())
    }

    pub fn set_d1(&mut self, p: i32, q: i32, m: Matrix) -> Result<(), ComplexError> {
        self.insert(Block::D1, (p, q), m)
    }

    pub fn set_d2(&mut self, p: i32, q: i32, m: Matrix) -> Result<(), ComplexError> {
        self.insert(Block::D2, (p, q), m)
    }

    /// Sets one real-structure block. The first call turns the real
    /// structure on; bidegrees never set are zero maps.
    pub fn set_sigma(&mut self, p: i32, q: i32, m: Matrix) -> Result<(), ComplexError> {
        self.insert(Block::Sigma, (p, q), m)
    }

    /// Marks the complex as carrying a real structure without setting any
    /// block (only meaningful for the zero complex or before `set_sigma`).
    pub fn enable_sigma(&mut self) {
        self.sigma.get_or_insert_with(BTreeMap::new);
    }

    pub fn clear_sigma(&mut self) {
        self.sigma = None;
    }

    pub fn set_labels(&mut self, p: i32, q: i32, labels: Vec<String>) -> Result<(), ComplexError> {
        if labels.len() != self.dim(p, q) {
            return Err(ComplexError::MalformedLabels(format!(
                "{} labels at ({p},{q}) for a space of dimension {}",
                labels.len(),
                self.dim(p, q)
            )));
        }
        if !labels.is_empty() {
            self.labels
                .get_or_insert_with(BTreeMap::new)
                .insert((p, q), labels);
        }
        Ok(())
    }

    pub fn clear_labels(&mut self) {
        self.labels = None;
    }

    pub fn with_d1(mut self, p: i32, q: i32, m: Matrix) -> Result<Self, ComplexError> {
        self.set_d1(p, q, m)?;
        Ok(self)
    }

    pub fn with_d2(mut self, p: i32, q: i32, m: Matrix) -> Result<Self, ComplexError> {
        self.set_d2(p, q, m)?;
        Ok(self)
    }

    pub fn with_sigma(mut self, p: i32, q: i32, m: Matrix) -> Result<Self, ComplexError> {
        self.set_sigma(p, q, m)?;
        Ok(self)
    }

    /// Rejects the complex unless every axiom holds.
    pub fn ensure_valid(&self) -> Result<(), ComplexError> {
        let report = self.validate()?;
        if report.is_valid() {
            Ok(())
        } else {
            Err(ComplexError::Invalid(report))
        }
    }
}
