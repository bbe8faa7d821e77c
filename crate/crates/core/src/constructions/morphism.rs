use std::borrow::Cow;
use std::collections::{BTreeMap, BTreeSet};

use super::summand_offsets;
use crate::complex::{MapFailure, Theory};
use crate::error::MorphismError;
use crate::linalg::Matrix;
use crate::{Bidegree, DoubleComplex};

/// A bigraded linear map `source → target` commuting with ∂₁ and ∂₂.
/// `blocks[(p,q)]` has shape `target.dim(p,q) × source.dim(p,q)`; absent
/// blocks are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    source: DoubleComplex,
    target: DoubleComplex,
    blocks: BTreeMap<Bidegree, Matrix>,
    real: bool,
}

impl Morphism {
    /// Checks both endpoints, every block shape and commutation with both
    /// differentials.
    pub fn new(
        source: DoubleComplex,
        target: DoubleComplex,
        blocks: impl IntoIterator<Item = (Bidegree, Matrix)>,
    ) -> Result<Self, MorphismError> {
        source.ensure_valid()?;
        target.ensure_valid()?;
        let mut map = BTreeMap::new();
        for ((p, q), m) in blocks {
            let expected = (target.dim(p, q), source.dim(p, q));
            if m.shape() != expected {
                return Err(MorphismError::Malformed {
                    bidegree: (p, q),
                    reason: format!("block has shape {:?}, expected {expected:?}", m.shape()),
                });
            }
            if map.contains_key(&(p, q)) {
                return Err(MorphismError::Malformed {
                    bidegree: (p, q),
                    reason: "duplicate block".into(),
                });
            }
            if !m.is_zero() {
                map.insert((p, q), m);
            }
        }
        let f = Self {
            source,
            target,
            blocks: map,
            real: false,
        };
        f.check_commutes()?;
        Ok(f)
    }

    /// Like [`Morphism::new`], additionally requiring compatibility with the
    /// real structures: `σ_T ∘ f = f ∘ σ_S`.
    pub fn new_real(
        source: DoubleComplex,
        target: DoubleComplex,
        blocks: impl IntoIterator<Item = (Bidegree, Matrix)>,
    ) -> Result<Self, MorphismError> {
        let mut f = Self::new(source, target, blocks)?;
        f.check_real()?;
        f.real = true;
        Ok(f)
    }

    fn check_commutes(&self) -> Result<(), MorphismError> {
        let (s, t) = (&self.source, &self.target);
        for (p, q) in s.bidegrees() {
            let f = self.block(p, q);
            if t.d1(p, q).mul(&f) != self.block(p + 1, q).mul(&s.d1(p, q)) {
                return Err(MorphismError::Malformed {
                    bidegree: (p, q),
                    reason: "does not commute with d1".into(),
                });
            }
            if t.d2(p, q).mul(&f) != self.block(p, q + 1).mul(&s.d2(p, q)) {
                return Err(MorphismError::Malformed {
                    bidegree: (p, q),
                    reason: "does not commute with d2".into(),
                });
            }
        }
        Ok(())
    }

    fn check_real(&self) -> Result<(), MorphismError> {
        let (s, t) = (&self.source, &self.target);
        if !s.has_sigma() || !t.has_sigma() {
            return Err(MorphismError::Malformed {
                bidegree: (0, 0),
                reason: "a real morphism needs real structures on both ends".into(),
            });
        }
        for (p, q) in s.bidegrees() {
            // σ_T(f v) = S_T conj(F) conj(v),  f(σ_S v) = F_{qp} S_S conj(v)
            let lhs = t.sigma(p, q).expect("σ").mul(&self.block(p, q).conj());
            let rhs = self.block(q, p).mul(&s.sigma(p, q).expect("σ"));
            if lhs != rhs {
                return Err(MorphismError::Malformed {
                    bidegree: (p, q),
                    reason: "does not commute with the real structures".into(),
                });
            }
        }
        Ok(())
    }

    pub fn identity(k: &DoubleComplex) -> Result<Self, MorphismError> {
        let blocks: Vec<_> = k.support().map(|(b, d)| (b, Matrix::identity(d))).collect();
        if k.has_sigma() {
            Self::new_real(k.clone(), k.clone(), blocks)
        } else {
            Self::new(k.clone(), k.clone(), blocks)
        }
    }

    pub fn zero(source: &DoubleComplex, target: &DoubleComplex) -> Result<Self, MorphismError> {
        Self::new(source.clone(), target.clone(), [])
    }

    /// Inclusion of the `i`-th summand into `direct_sum(summands)`.
    pub fn inclusion(summands: &[DoubleComplex], i: usize) -> Result<Self, MorphismError> {
        let sum = super::direct_sum(summands);
        let k = &summands[i];
        let blocks: Vec<_> = k
            .support()
            .map(|((p, q), d)| {
                let mut m = Matrix::zeros(sum.dim(p, q), d);
                m.set_block(summand_offsets(summands, p, q)[i], 0, &Matrix::identity(d));
                ((p, q), m)
            })
            .collect();
        if k.has_sigma() && sum.has_sigma() {
            Self::new_real(k.clone(), sum, blocks)
        } else {
            Self::new(k.clone(), sum, blocks)
        }
    }

    /// Projection of `direct_sum(summands)` onto its `i`-th summand.
    pub fn projection(summands: &[DoubleComplex], i: usize) -> Result<Self, MorphismError> {
        let sum = super::direct_sum(summands);
        let k = &summands[i];
        let blocks: Vec<_> = k
            .support()
            .map(|((p, q), d)| {
                let mut m = Matrix::zeros(d, sum.dim(p, q));
                m.set_block(0, summand_offsets(summands, p, q)[i], &Matrix::identity(d));
                ((p, q), m)
            })
            .collect();
        Self::new(sum, k.clone(), blocks)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Morphism) -> Result<Self, MorphismError> {
        if self.target != other.source {
            return Err(MorphismError::Malformed {
                bidegree: (0, 0),
                reason: "composition of morphisms with mismatched endpoints".into(),
            });
        }
        let blocks: Vec<_> = self
            .source
            .bidegrees()
            .map(|(p, q)| ((p, q), other.block(p, q).mul(&self.block(p, q))))
            .collect();
        let mut f = Self::new(self.source.clone(), other.target.clone(), blocks)?;
        f.real = self.real && other.real;
        Ok(f)
    }

    /// Same map with source and target both shifted by `(u, v)`.
    pub fn shifted(&self, u: i32, v: i32) -> Result<Self, MorphismError> {
        let blocks: Vec<_> = self
            .blocks
            .iter()
            .map(|(&(p, q), m)| ((p + u, q + v), m.clone()))
            .collect();
        let (s, t) = (
            super::shift(&self.source, u, v),
            super::shift(&self.target, u, v),
        );
        if self.real && u == v {
            Self::new_real(s, t, blocks)
        } else {
            Self::new(s, t, blocks)
        }
    }

    /// Blockwise direct sum `⊕ f_i : ⊕ S_i → ⊕ T_i`.
    pub fn direct_sum(maps: &[Morphism]) -> Result<Self, MorphismError> {
        let sources: Vec<DoubleComplex> = maps.iter().map(|f| f.source.clone()).collect();
        let targets: Vec<DoubleComplex> = maps.iter().map(|f| f.target.clone()).collect();
        let (s, t) = (super::direct_sum(&sources), super::direct_sum(&targets));
        let support: BTreeSet<Bidegree> = s.bidegrees().collect();
        let blocks: Vec<_> = support
            .into_iter()
            .map(|(p, q)| {
                let parts: Vec<Matrix> = maps.iter().map(|f| f.block(p, q).into_owned()).collect();
                ((p, q), Matrix::block_diag(&parts))
            })
            .collect();
        if !maps.is_empty() && maps.iter().all(|f| f.real) {
            Self::new_real(s, t, blocks)
        } else {
            Self::new(s, t, blocks)
        }
    }

    pub fn source(&self) -> &DoubleComplex {
        &self.source
    }

    pub fn target(&self) -> &DoubleComplex {
        &self.target
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    pub fn block(&self, p: i32, q: i32) -> Cow<'_, Matrix> {
        match self.blocks.get(&(p, q)) {
            Some(m) => Cow::Borrowed(m),
            None => Cow::Owned(Matrix::zeros(self.target.dim(p, q), self.source.dim(p, q))),
        }
    }

    pub fn blocks(&self) -> impl Iterator<Item = (Bidegree, &Matrix)> {
        self.blocks.iter().map(|(&b, m)| (b, m))
    }

    fn total_block(&self, k: i32) -> Matrix {
        let src = self.source.total_summands(k);
        let dst = self.target.total_summands(k);
        let mut m = Matrix::zeros(dst.iter().map(|x| x.1).sum(), src.iter().map(|x| x.1).sum());
        let mut c0 = 0;
        for &((p, q), d) in &src {
            let mut r0 = 0;
            for &((tp, tq), td) in &dst {
                if (tp, tq) == (p, q) {
                    m.set_block(r0, c0, &self.block(p, q));
                }
                r0 += td;
            }
            c0 += d;
        }
        m
    }

    /// Matrix of the induced map on `theory` at `(p, q)` in the
    /// representative bases of source and target. For
    /// [`Theory::DeRham`], `p` is the total degree.
    pub fn induced_map(&self, theory: Theory, p: i32, q: i32) -> Matrix {
        let src = self.source.quotient(theory, p, q);
        let dst = self.target.quotient(theory, p, q);
        let f = if theory == Theory::DeRham {
            self.total_block(p)
        } else {
            self.block(p, q).into_owned()
        };
        dst.classes_of(&f.mul(src.reps()))
            .expect("morphisms preserve cocycles")
    }

    fn bigraded_support(&self) -> BTreeSet<Bidegree> {
        self.source
            .bidegrees()
            .chain(self.target.bidegrees())
            .collect()
    }

    /// First bidegree where the induced map on `theory` is not bijective.
    pub fn first_non_iso(&self, theory: Theory) -> Option<(Bidegree, MapFailure)> {
        assert!(theory.is_bigraded());
        self.bigraded_support().into_iter().find_map(|(p, q)| {
            MapFailure::classify(&self.induced_map(theory, p, q)).map(|fail| ((p, q), fail))
        })
    }

    /// Whether the induced map on Dolbeault cohomology is bijective at every
    /// bidegree.
    pub fn is_e1_isomorphism(&self) -> bool {
        self.first_non_iso(Theory::Dolbeault).is_none()
    }

    /// Whether the induced map on Bott-Chern cohomology is bijective at every
    /// bidegree. Only defined for E₁-isomorphisms, for which the answer is
    /// always `true`; this exists to exercise that fact.
    pub fn induced_bc_dims_equal(&self) -> Result<bool, MorphismError> {
        if !self.is_e1_isomorphism() {
            return Err(MorphismError::NotE1Isomorphism);
        }
        Ok(self.first_non_iso(Theory::BottChern).is_none())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::direct_sum;
    use crate::fixtures::{dot, iwasawa, kodaira_thurston, square, zigzag_l};

    #[test]
    fn identity_is_e1_iso() {
        let f = Morphism::identity(&kodaira_thurston()).unwrap();
        assert!(f.is_real());
        assert!(f.is_e1_isomorphism());
        assert!(f.induced_bc_dims_equal().unwrap());
        let f = Morphism::identity(&iwasawa()).unwrap();
        assert!(f.induced_bc_dims_equal().unwrap());
    }

    #[test]
    fn inclusion_into_sum_with_square() {
        let k = kodaira_thurston();
        let f = Morphism::inclusion(&[k.clone(), square(0, 0)], 0).unwrap();
        assert!(f.is_real());
        assert!(f.is_e1_isomorphism());
        assert!(f.induced_bc_dims_equal().unwrap());
    }

    #[test]
    fn zero_map_between_dots() {
        let f = Morphism::zero(&dot(0, 0), &dot(0, 0)).unwrap();
        assert!(!f.is_e1_isomorphism());
        assert_eq!(
            f.induced_bc_dims_equal(),
            Err(MorphismError::NotE1Isomorphism)
        );
    }

    #[test]
    fn non_commuting_blocks_are_rejected() {
        // identity on the (0,0) vertex of the L-zigzag, zero on (1,0)
        let z = zigzag_l(0, 0);
        let err = Morphism::new(z.clone(), z, [((0, 0), Matrix::identity(1))]).unwrap_err();
        assert!(matches!(
            err,
            MorphismError::Malformed {
                bidegree: (0, 0),
                ..
            }
        ));
    }

    #[test]
    fn projection_kills_square() {
        let parts = [dot(1, 1), square(0, 0)];
        let f = Morphism::projection(&parts, 0).unwrap();
        assert!(f.is_e1_isomorphism());
        let g = Morphism::inclusion(&parts, 0).unwrap();
        let round = g.then(&f).unwrap();
        assert_eq!(round.block(1, 1).into_owned(), Matrix::identity(1));
        assert_eq!(direct_sum(&parts).dim(1, 1), 2);
    }

    #[test]
    fn real_structure_compatibility() {
        // multiplying a σ-fixed dot by i does not commute with σ
        let d = dot(0, 0);
        let times_i = Matrix::column_vector(&[crate::Scalar::i()]);
        assert!(Morphism::new(d.clone(), d.clone(), [((0, 0), times_i.clone())]).is_ok());
        assert!(Morphism::new_real(d.clone(), d, [((0, 0), times_i)]).is_err());
    }
}
