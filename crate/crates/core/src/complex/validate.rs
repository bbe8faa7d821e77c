use std::fmt;

use super::{Block, DoubleComplex};
use crate::error::ComplexError;
use crate::linalg::Matrix;
use crate::Bidegree;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    D1Squared,
    D2Squared,
    Anticommutation,
    SigmaInvolution,
    SigmaGradingSwap,
    SigmaConjugatesD1,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::D1Squared => "d1∘d1 = 0",
            Axiom::D2Squared => "d2∘d2 = 0",
            Axiom::Anticommutation => "d1∘d2 + d2∘d1 = 0",
            Axiom::SigmaInvolution => "σ involution",
            Axiom::SigmaGradingSwap => "σ grading swap",
            Axiom::SigmaConjugatesD1 => "σ∂₁σ = ∂₂",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub bidegree: Bidegree,
    pub axiom: Axiom,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, q) = self.bidegree;
        write!(f, "{} fails at ({p},{q})", self.axiom)
    }
}

/// Outcome of [`DoubleComplex::validate`]: empty means every axiom holds.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return f.write_str("pass");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl DoubleComplex {
    /// Checks ∂₁² = 0, ∂₂² = 0, ∂₁∂₂ + ∂₂∂₁ = 0 and, when a real structure is
    /// present, that σ is an antilinear involution swapping `(p,q)` with
    /// `(q,p)` and conjugating ∂₁ into ∂₂.
    ///
    /// Shape errors are reported as `Err(Malformed)`, axiom failures as
    /// entries of the returned report, in lexicographic bidegree order.
    pub fn validate(&self) -> Result<ValidationReport, ComplexError> {
        for block in [Block::D1, Block::D2, Block::Sigma] {
            for (at, m) in self.blocks(block) {
                self.check_shape(block, at, m)?;
            }
        }
        if let Some(labels) = &self.labels {
            for (&(p, q), l) in labels {
                if l.len() != self.dim(p, q) {
                    return Err(ComplexError::MalformedLabels(format!(
                        "{} labels at ({p},{q}) for a space of dimension {}",
                        l.len(),
                        self.dim(p, q)
                    )));
                }
            }
        }

        let mut violations = Vec::new();
        let mut fail = |bidegree, axiom| violations.push(Violation { bidegree, axiom });
        for (p, q) in self.bidegrees() {
            if !self.d1(p + 1, q).mul(&self.d1(p, q)).is_zero() {
                fail((p, q), Axiom::D1Squared);
            }
            if !self.d2(p, q + 1).mul(&self.d2(p, q)).is_zero() {
                fail((p, q), Axiom::D2Squared);
            }
            let a = self.d1(p, q + 1).mul(&self.d2(p, q));
            let b = self.d2(p + 1, q).mul(&self.d1(p, q));
            if !a.add(&b).is_zero() {
                fail((p, q), Axiom::Anticommutation);
            }
            if self.has_sigma() {
                self.check_sigma_at(p, q, &mut fail);
            }
        }
        Ok(ValidationReport { violations })
    }

    fn check_sigma_at(&self, p: i32, q: i32, fail: &mut impl FnMut(Bidegree, Axiom)) {
        let s = |a: i32, b: i32| self.sigma(a, b).expect("sigma present").into_owned();
        let stored = self.sigma.as_ref().is_some_and(|m| m.contains_key(&(p, q)));
        if self.dim(p, q) != self.dim(q, p) || !stored {
            fail((p, q), Axiom::SigmaGradingSwap);
            return;
        }
        let n = self.dim(p, q);
        // σ(σ v) = S_{qp} · conj(S_{pq} · conj v) = S_{qp} · conj(S_{pq}) · v
        if s(q, p).mul(&s(p, q).conj()) != Matrix::identity(n) {
            fail((p, q), Axiom::SigmaInvolution);
        }
        // σ ∂₁ σ v = S_{q+1,p} · conj(D1_{q,p}) · conj(S_{pq}) · v
        let lhs = s(q + 1, p).mul(&self.d1(q, p).conj()).mul(&s(p, q).conj());
        if lhs != *self.d2(p, q) {
            fail((p, q), Axiom::SigmaConjugatesD1);
        }
    }
}
