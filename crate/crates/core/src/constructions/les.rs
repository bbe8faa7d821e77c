//! The long exact cohomology sequence of a short exact sequence of double
//! complexes, along one row (`∂₂`, fixed `p`) or one column (`∂₁`, fixed
//! `q`).

use std::collections::BTreeSet;
use std::fmt;

use super::Morphism;
use crate::error::MorphismError;
use crate::linalg::{kernel_basis, rank, solve, Matrix, Quotient};
use crate::{Bidegree, DoubleComplex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `K^{p,•}` with `∂₂`, `p` fixed.
    Row,
    /// `K^{•,q}` with `∂₁`, `q` fixed.
    Column,
}

impl Direction {
    fn bidegree(self, fixed: i32, n: i32) -> Bidegree {
        match self {
            Direction::Row => (fixed, n),
            Direction::Column => (n, fixed),
        }
    }

    fn running(self, (p, q): Bidegree) -> i32 {
        match self {
            Direction::Row => q,
            Direction::Column => p,
        }
    }

    fn fixed_of(self, (p, q): Bidegree) -> i32 {
        match self {
            Direction::Row => p,
            Direction::Column => q,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    A,
    B,
    C,
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Slot::A => "A",
            Slot::B => "B",
            Slot::C => "C",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LesTerm {
    pub slot: Slot,
    pub degree: i32,
    pub dim: usize,
}

/// `… → H^n(A) → H^n(B) → H^n(C) → H^{n+1}(A) → …`, with `maps[i]` going
/// from `terms[i]` to `terms[i + 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LongExactSequence {
    pub direction: Direction,
    pub fixed: i32,
    pub terms: Vec<LesTerm>,
    pub maps: Vec<Matrix>,
}

impl LongExactSequence {
    /// Connecting maps `H^n(C) → H^{n+1}(A)`, keyed by `n`.
    pub fn connecting_maps(&self) -> impl Iterator<Item = (i32, &Matrix)> {
        self.terms
            .iter()
            .zip(&self.maps)
            .filter(|(t, _)| t.slot == Slot::C)
            .map(|(t, m)| (t.degree, m))
    }

    /// Index of the first term where `rank(in) ≠ dim - rank(out)`; maps
    /// beyond either end are zero.
    pub fn first_inexact_term(&self) -> Option<usize> {
        (0..self.terms.len()).find(|&i| {
            let incoming = if i == 0 { 0 } else { rank(&self.maps[i - 1]) };
            let outgoing = self.maps.get(i).map_or(0, rank);
            incoming + outgoing != self.terms[i].dim
        })
    }

    pub fn is_exact(&self) -> bool {
        self.first_inexact_term().is_none()
    }
}

impl fmt::Display for LongExactSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (label, fixed) = match self.direction {
            Direction::Row => ("p", self.fixed),
            Direction::Column => ("q", self.fixed),
        };
        writeln!(f, "long exact sequence ({label} = {fixed}):")?;
        for (i, t) in self.terms.iter().enumerate() {
            write!(f, "  H^{}({}) = {}", t.degree, t.slot, t.dim)?;
            if let Some(m) = self.maps.get(i) {
                write!(f, "  --[rank {}]-->", rank(m))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

struct Slice<'a> {
    k: &'a DoubleComplex,
    direction: Direction,
    fixed: i32,
}

impl Slice<'_> {
    fn at(&self, n: i32) -> Bidegree {
        self.direction.bidegree(self.fixed, n)
    }

    fn diff(&self, n: i32) -> Matrix {
        let (p, q) = self.at(n);
        match self.direction {
            Direction::Row => self.k.d2(p, q).into_owned(),
            Direction::Column => self.k.d1(p, q).into_owned(),
        }
    }

    fn cohomology(&self, n: i32) -> Quotient {
        Quotient::new(&kernel_basis(&self.diff(n)), &self.diff(n - 1)).expect("one ambient space")
    }
}

fn check_short_exact(f: &Morphism, g: &Morphism) -> Result<(), MorphismError> {
    if f.target() != g.source() {
        return Err(MorphismError::NotExact {
            bidegree: (0, 0),
            reason: "the middle complexes of f and g differ".into(),
        });
    }
    let (a, b, c) = (f.source(), f.target(), g.target());
    let support: BTreeSet<Bidegree> = a
        .bidegrees()
        .chain(b.bidegrees())
        .chain(c.bidegrees())
        .collect();
    for (p, q) in support {
        let (fb, gb) = (f.block(p, q), g.block(p, q));
        let fail = |reason: &str| MorphismError::NotExact {
            bidegree: (p, q),
            reason: reason.into(),
        };
        if !gb.mul(&fb).is_zero() {
            return Err(fail("g ∘ f ≠ 0"));
        }
        let (rf, rg) = (rank(&fb), rank(&gb));
        if rf != a.dim(p, q) {
            return Err(fail("f is not injective"));
        }
        if rg != c.dim(p, q) {
            return Err(fail("g is not surjective"));
        }
        if rf + rg != b.dim(p, q) {
            return Err(fail("ker g ≠ im f"));
        }
    }
    Ok(())
}

/// Builds the long exact sequence of `0 → A --f--> B --g--> C → 0` along the
/// slice `fixed` in `direction`, with connecting maps obtained by lifting
/// along `g`, applying the differential of `B` and pulling back along `f`.
/// Exactness of the result is verified before returning.
pub fn ses_to_les(
    f: &Morphism,
    g: &Morphism,
    fixed: i32,
    direction: Direction,
) -> Result<LongExactSequence, MorphismError> {
    check_short_exact(f, g)?;
    let slice = |k| Slice {
        k,
        direction,
        fixed,
    };
    let (a, b, c) = (slice(f.source()), slice(f.target()), slice(g.target()));
    let degrees: BTreeSet<i32> = [f.source(), f.target(), g.target()]
        .into_iter()
        .flat_map(|k| k.bidegrees())
        .filter(|&bd| direction.fixed_of(bd) == fixed)
        .map(|bd| direction.running(bd))
        .collect();

    let mut terms = Vec::new();
    let mut maps = Vec::new();
    let (Some(&lo), Some(&hi)) = (degrees.first(), degrees.last()) else {
        return Ok(LongExactSequence {
            direction,
            fixed,
            terms,
            maps,
        });
    };
    for n in lo..=hi {
        let (ha, hb, hc) = (a.cohomology(n), b.cohomology(n), c.cohomology(n));
        let (p, q) = a.at(n);
        let fmap = hb
            .classes_of(&f.block(p, q).mul(ha.reps()))
            .expect("f preserves cocycles");
        let gmap = hc
            .classes_of(&g.block(p, q).mul(hb.reps()))
            .expect("g preserves cocycles");

        terms.push(LesTerm {
            slot: Slot::A,
            degree: n,
            dim: ha.dim(),
        });
        terms.push(LesTerm {
            slot: Slot::B,
            degree: n,
            dim: hb.dim(),
        });
        terms.push(LesTerm {
            slot: Slot::C,
            degree: n,
            dim: hc.dim(),
        });
        maps.push(fmap);
        maps.push(gmap);

        if n < hi {
            let (p1, q1) = a.at(n + 1);
            let lift = solve(&g.block(p, q), hc.reps())
                .expect("one ambient space")
                .ok_or_else(|| {
                    MorphismError::InternalInconsistency("g is not surjective".into())
                })?;
            let boundary = b.diff(n).mul(&lift);
            let pulled = solve(&f.block(p1, q1), &boundary)
                .expect("one ambient space")
                .ok_or_else(|| {
                    MorphismError::InternalInconsistency("d(lift) is not in the image of f".into())
                })?;
            let next = a.cohomology(n + 1);
            let delta = next.classes_of(&pulled).ok_or_else(|| {
                MorphismError::InternalInconsistency("pulled-back class is not a cocycle".into())
            })?;
            maps.push(delta);
        }
    }
    let les = LongExactSequence {
        direction,
        fixed,
        terms,
        maps,
    };
    if let Some(i) = les.first_inexact_term() {
        let t = les.terms[i];
        return Err(MorphismError::InternalInconsistency(format!(
            "sequence is not exact at H^{}({})",
            t.degree, t.slot
        )));
    }
    Ok(les)
}
