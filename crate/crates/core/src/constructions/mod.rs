//! Functorial constructions on double complexes, morphisms between them,
//! and long exact sequences in cohomology.

pub mod json;
mod les;
mod morphism;

use std::collections::{BTreeMap, BTreeSet};

pub use les::{ses_to_les, Direction, LesTerm, LongExactSequence, Slot};
pub use morphism::Morphism;

use crate::error::MorphismError;
use crate::linalg::Matrix;
use crate::{Bidegree, DoubleComplex};

/// `K[-u,-v]`: the space at `(p, q)` is `K^{p-u, q-v}`. No signs are
/// introduced. The real structure survives only when `u == v`.
pub fn shift(k: &DoubleComplex, u: i32, v: i32) -> DoubleComplex {
    let mv = |(p, q): Bidegree| (p + u, q + v);
    let mut out = DoubleComplex::new(k.support().map(|(b, d)| (mv(b), d)));
    for (b, m) in k.d1_blocks() {
        let (p, q) = mv(b);
        out.set_d1(p, q, m.clone())
            .expect("shape preserved by shift");
    }
    for (b, m) in k.d2_blocks() {
        let (p, q) = mv(b);
        out.set_d2(p, q, m.clone())
            .expect("shape preserved by shift");
    }
    if k.has_sigma() && u == v {
        out.enable_sigma();
        for (b, m) in k.sigma_blocks() {
            let (p, q) = mv(b);
            out.set_sigma(p, q, m.clone())
                .expect("shape preserved by shift");
        }
    }
    for (b, l) in k.label_blocks() {
        let (p, q) = mv(b);
        out.set_labels(p, q, l.to_vec())
            .expect("dims preserved by shift");
    }
    out
}

/// Offsets of each summand inside `(⊕ ks)^{p,q}`.
pub fn summand_offsets(ks: &[DoubleComplex], p: i32, q: i32) -> Vec<usize> {
    let mut acc = 0;
    ks.iter()
        .map(|k| {
            let o = acc;
            acc += k.dim(p, q);
            o
        })
        .collect()
}

fn union_support(ks: &[DoubleComplex]) -> BTreeSet<Bidegree> {
    ks.iter().flat_map(|k| k.bidegrees()).collect()
}

/// Blockwise direct sum. σ is kept when every summand has one, labels when
/// every summand has them.
pub fn direct_sum(ks: &[DoubleComplex]) -> DoubleComplex {
    let support = union_support(ks);
    let mut out = DoubleComplex::new(
        support
            .iter()
            .map(|&(p, q)| ((p, q), ks.iter().map(|k| k.dim(p, q)).sum())),
    );
    let all_sigma = !ks.is_empty() && ks.iter().all(DoubleComplex::has_sigma);
    let all_labels = !ks.is_empty() && ks.iter().all(DoubleComplex::has_labels);
    if all_sigma {
        out.enable_sigma();
    }
    for &(p, q) in &support {
        let blocks = |f: &dyn Fn(&DoubleComplex) -> Matrix| {
            Matrix::block_diag(&ks.iter().map(f).collect::<Vec<_>>())
        };
        out.set_d1(p, q, blocks(&|k| k.d1(p, q).into_owned()))
            .expect("block-diagonal shapes match");
        out.set_d2(p, q, blocks(&|k| k.d2(p, q).into_owned()))
            .expect("block-diagonal shapes match");
        if all_sigma {
            out.set_sigma(p, q, blocks(&|k| k.sigma(p, q).expect("σ").into_owned()))
                .expect("block-diagonal shapes match");
        }
        if all_labels {
            let labels: Vec<String> = ks
                .iter()
                .flat_map(|k| k.labels(p, q).unwrap_or(&[]).to_vec())
                .collect();
            out.set_labels(p, q, labels)
                .expect("one label per basis vector");
        }
    }
    out
}

/// Pairs of bidegrees `(x, y)` with `x ∈ supp K`, `y ∈ supp L`,
/// `x + y = (p, q)`, ordered by `x`, with their offsets in `(K⊗L)^{p,q}`.
type Layout = BTreeMap<Bidegree, Vec<(Bidegree, Bidegree, usize)>>;

fn tensor_layout(k: &DoubleComplex, l: &DoubleComplex) -> Layout {
    let mut layout = Layout::new();
    let mut fill: BTreeMap<Bidegree, usize> = BTreeMap::new();
    for ((a, b), m) in k.support() {
        for ((c, d), n) in l.support() {
            let at = (a + c, b + d);
            let used = fill.entry(at).or_insert(0);
            layout.entry(at).or_default().push(((a, b), (c, d), *used));
            *used += m * n;
        }
    }
    layout
}

/// Bigraded tensor product with the Koszul rule
/// `d(x⊗y) = dx⊗y + (-1)^{p+q} x⊗dy` for `x ∈ K^{p,q}`, applied to both
/// differentials. Inside a summand `K^{a,b} ⊗ L^{c,d}` the basis is
/// `e_i ⊗ f_j` at index `i · dim L^{c,d} + j`. σ acts factorwise when both
/// factors have one.
pub fn tensor(k: &DoubleComplex, l: &DoubleComplex) -> DoubleComplex {
    let layout = tensor_layout(k, l);
    let dim_of = |x: Bidegree, y: Bidegree| k.dim(x.0, x.1) * l.dim(y.0, y.1);
    let mut out = DoubleComplex::new(
        layout
            .iter()
            .map(|(&b, parts)| (b, parts.iter().map(|&(x, y, _)| dim_of(x, y)).sum())),
    );
    let find = |at: Bidegree, x: Bidegree, y: Bidegree| {
        layout
            .get(&at)
            .and_then(|parts| parts.iter().find(|&&(a, b, _)| a == x && b == y))
            .map(|&(_, _, o)| o)
    };
    let with_sigma = k.has_sigma() && l.has_sigma();
    if with_sigma {
        out.enable_sigma();
    }
    let with_labels = k.has_labels() && l.has_labels();

    for (&(p, q), parts) in &layout {
        let mut ds = [
            Matrix::zeros(out.dim(p + 1, q), out.dim(p, q)),
            Matrix::zeros(out.dim(p, q + 1), out.dim(p, q)),
        ];
        let mut sigma = Matrix::zeros(out.dim(q, p), out.dim(p, q));
        let mut labels = Vec::new();
        for &(x, y, col) in parts {
            let (m, n) = (k.dim(x.0, x.1), l.dim(y.0, y.1));
            let koszul = if (x.0 + x.1) % 2 == 0 {
                Matrix::identity(m)
            } else {
                Matrix::identity(m).neg()
            };
            // (differential, target bidegree, target pair, block)
            let pieces = [
                (
                    0,
                    (p + 1, q),
                    (x.0 + 1, x.1),
                    y,
                    k.d1(x.0, x.1).kron(&Matrix::identity(n)),
                ),
                (
                    0,
                    (p + 1, q),
                    x,
                    (y.0 + 1, y.1),
                    koszul.kron(&l.d1(y.0, y.1)),
                ),
                (
                    1,
                    (p, q + 1),
                    (x.0, x.1 + 1),
                    y,
                    k.d2(x.0, x.1).kron(&Matrix::identity(n)),
                ),
                (
                    1,
                    (p, q + 1),
                    x,
                    (y.0, y.1 + 1),
                    koszul.kron(&l.d2(y.0, y.1)),
                ),
            ];
            for (i, at, tx, ty, block) in pieces {
                if let Some(row) = find(at, tx, ty) {
                    ds[i].set_block(row, col, &block);
                }
            }
            if let Some(row) = find((q, p), (x.1, x.0), (y.1, y.0)).filter(|_| with_sigma) {
                let block = k
                    .sigma(x.0, x.1)
                    .expect("σ")
                    .kron(&l.sigma(y.0, y.1).expect("σ"));
                sigma.set_block(row, col, &block);
            }
            if with_labels {
                let (lk, ll) = (k.labels(x.0, x.1), l.labels(y.0, y.1));
                for i in 0..m {
                    for j in 0..n {
                        let a = lk.map_or(String::new(), |v| v[i].clone());
                        let b = ll.map_or(String::new(), |v| v[j].clone());
                        labels.push(format!("{a}⊗{b}"));
                    }
                }
            }
        }
        let [d1, d2] = ds;
        out.set_d1(p, q, d1).expect("layout shapes");
        out.set_d2(p, q, d2).expect("layout shapes");
        if with_sigma {
            out.set_sigma(p, q, sigma).expect("layout shapes");
        }
        if with_labels {
            out.set_labels(p, q, labels).expect("layout shapes");
        }
    }
    out
}

/// How the summands of a Leray-Hirsch model are matched under
/// conjugation: `pairs` are swapped, `fixed` are self-conjugate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugatePairing {
    pub pairs: Vec<(usize, usize)>,
    pub fixed: Vec<usize>,
}

impl ConjugatePairing {
    /// The layout `t_{i+s} = t̄_i` for `i < s`, and `t_i = t̄_i` for
    /// `2s ≤ i < r` (zero-based).
    pub fn standard(s: usize, r: usize) -> Self {
        assert!(2 * s <= r, "more pairs than summands");
        Self {
            pairs: (0..s).map(|i| (i, i + s)).collect(),
            fixed: (2 * s..r).collect(),
        }
    }

    /// All summands self-conjugate.
    pub fn all_fixed(r: usize) -> Self {
        Self::standard(0, r)
    }

    fn partners(&self, degrees: &[(i32, i32)]) -> Result<Vec<usize>, MorphismError> {
        let r = degrees.len();
        let mut partner = vec![usize::MAX; r];
        let mut claim = |i: usize, j: usize| {
            if i >= r || partner[i] != usize::MAX {
                return Err(MorphismError::InvalidPairing(format!(
                    "summand index {i} is out of range or used twice"
                )));
            }
            partner[i] = j;
            Ok(())
        };
        for &(i, j) in &self.pairs {
            if i == j {
                return Err(MorphismError::InvalidPairing(format!(
                    "summand {i} is paired with itself; list it as fixed"
                )));
            }
            claim(i, j)?;
            claim(j, i)?;
            let ((ui, vi), (uj, vj)) = (degrees[i], degrees[j]);
            if (uj, vj) != (vi, ui) {
                return Err(MorphismError::InvalidPairing(format!(
                    "paired summands {i} and {j} have degrees ({ui},{vi}) and ({uj},{vj}), which are not swapped"
                )));
            }
        }
        for &i in &self.fixed {
            claim(i, i)?;
            let (u, v) = degrees[i];
            if u != v {
                return Err(MorphismError::InvalidPairing(format!(
                    "self-conjugate summand {i} has degree ({u},{v}) off the diagonal"
                )));
            }
        }
        if let Some(i) = partner.iter().position(|&j| j == usize::MAX) {
            return Err(MorphismError::InvalidPairing(format!(
                "summand {i} is neither paired nor fixed"
            )));
        }
        Ok(partner)
    }
}

/// The model `⊕_i base[-u_i, -v_i]` of a fiber bundle whose fiber
/// cohomology is spanned by classes of degrees `(u_i, v_i)`, with the real
/// structure that sends the `i`-th component to the conjugate of its
/// partner's (conjugate pairs swap, self-conjugate summands map to
/// themselves), each through the base σ.
pub fn leray_hirsch_model(
    base: &DoubleComplex,
    degrees: &[(i32, i32)],
    pairing: &ConjugatePairing,
) -> Result<DoubleComplex, MorphismError> {
    base.ensure_valid()?;
    if !base.has_sigma() {
        return Err(MorphismError::InvalidPairing(
            "base complex has no real structure".into(),
        ));
    }
    let partner = pairing.partners(degrees)?;
    let parts: Vec<DoubleComplex> = degrees
        .iter()
        .map(|&(u, v)| {
            let mut s = shift(base, u, v);
            s.clear_sigma();
            s.clear_labels();
            s
        })
        .collect();
    let mut model = direct_sum(&parts);
    model.enable_sigma();
    let support: Vec<Bidegree> = model.bidegrees().collect();
    for (p, q) in support {
        let src_off = summand_offsets(&parts, p, q);
        let dst_off = summand_offsets(&parts, q, p);
        let mut sigma = Matrix::zeros(model.dim(q, p), model.dim(p, q));
        for (i, &(u, v)) in degrees.iter().enumerate() {
            let (bp, bq) = (p - u, q - v);
            if base.dim(bp, bq) == 0 {
                continue;
            }
            let block = base.sigma(bp, bq).expect("base σ");
            sigma.set_block(dst_off[partner[i]], src_off[i], &block);
        }
        model.set_sigma(p, q, sigma).expect("σ shape from layout");
    }
    Ok(model)
}
