use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::DoubleComplex;
use crate::error::ComplexError;
use crate::linalg::{kernel_basis, rank, Matrix, Quotient};
use crate::Bidegree;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Theory {
    /// `H^q(K^{p,•}, ∂₂)`.
    Dolbeault,
    /// `H^p(K^{•,q}, ∂₁)`.
    ConjugateDolbeault,
    /// `(ker ∂₁ ∩ ker ∂₂) / im ∂₁∂₂`.
    BottChern,
    /// `ker ∂₁∂₂ / (im ∂₁ + im ∂₂)`.
    Aeppli,
    /// Cohomology of the total complex with differential `∂₁ + ∂₂`.
    DeRham,
}

impl Theory {
    pub const ALL: [Theory; 5] = [
        Theory::Dolbeault,
        Theory::ConjugateDolbeault,
        Theory::BottChern,
        Theory::Aeppli,
        Theory::DeRham,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theory::Dolbeault => "dolbeault",
            Theory::ConjugateDolbeault => "conjugate-dolbeault",
            Theory::BottChern => "bott-chern",
            Theory::Aeppli => "aeppli",
            Theory::DeRham => "de-rham-total",
        }
    }

    pub fn is_bigraded(self) -> bool {
        self != Theory::DeRham
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Theory {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dolbeault" => Ok(Theory::Dolbeault),
            "conjugate-dolbeault" => Ok(Theory::ConjugateDolbeault),
            "bott-chern" => Ok(Theory::BottChern),
            "aeppli" => Ok(Theory::Aeppli),
            "de-rham-total" | "de-rham" => Ok(Theory::DeRham),
            other => Err(format!("unknown cohomology theory {other:?}")),
        }
    }
}

/// Cohomology dimensions of one theory. Only nonzero entries are stored.
/// For [`Theory::DeRham`] the key `(k, 0)` holds the total degree `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyTable {
    pub theory: Theory,
    dims: BTreeMap<Bidegree, usize>,
}

impl CohomologyTable {
    pub fn new(theory: Theory, dims: impl IntoIterator<Item = (Bidegree, usize)>) -> Self {
        Self {
            theory,
            dims: dims.into_iter().filter(|&(_, d)| d > 0).collect(),
        }
    }

    pub fn get(&self, p: i32, q: i32) -> usize {
        self.dims.get(&(p, q)).copied().unwrap_or(0)
    }

    /// Entry in total degree `k` of a de Rham table.
    pub fn total(&self, k: i32) -> usize {
        debug_assert_eq!(self.theory, Theory::DeRham);
        self.get(k, 0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (Bidegree, usize)> + '_ {
        self.dims.iter().map(|(&b, &d)| (b, d))
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    /// Alternating sum `Σ (-1)^{p+q} h^{p,q}`.
    pub fn euler_characteristic(&self) -> i64 {
        self.entries()
            .map(|((p, q), d)| {
                if (p + q) % 2 == 0 {
                    d as i64
                } else {
                    -(d as i64)
                }
            })
            .sum()
    }

    /// Entries summed along each antidiagonal `p + q = k`.
    pub fn by_total_degree(&self) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for ((p, q), d) in self.entries() {
            *out.entry(p + q).or_insert(0) += d;
        }
        out
    }

    pub fn shifted(&self, u: i32, v: i32) -> Self {
        Self::new(
            self.theory,
            self.entries().map(|((p, q), d)| ((p + u, q + v), d)),
        )
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut dims = self.dims.clone();
        for (b, d) in other.entries() {
            *dims.entry(b).or_insert(0) += d;
        }
        Self::new(self.theory, dims)
    }

    /// Bidegree convolution, the dimension shadow of a tensor product.
    pub fn convolve(&self, other: &Self) -> Self {
        let mut dims = BTreeMap::new();
        for ((p, q), a) in self.entries() {
            for ((r, s), b) in other.entries() {
                *dims.entry((p + r, q + s)).or_insert(0) += a * b;
            }
        }
        Self::new(self.theory, dims)
    }
}

impl fmt::Display for CohomologyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}:", self.theory)?;
        if self.theory == Theory::DeRham {
            for ((k, _), d) in self.entries() {
                writeln!(f, "  H^{k} = {d}")?;
            }
            return Ok(());
        }
        let Some((p0, p1, q0, q1)) = bounds(self.dims.keys()) else {
            return writeln!(f, "  (zero)");
        };
        let width = self
            .dims
            .values()
            .map(|d| d.to_string().len())
            .max()
            .unwrap_or(1);
        let qw = q0.to_string().len().max(q1.to_string().len());
        // rows are q from top to bottom, columns are p
        for q in (q0..=q1).rev() {
            write!(f, "  q={q:>qw$} |")?;
            for p in p0..=p1 {
                write!(f, " {:>width$}", self.get(p, q))?;
            }
            writeln!(f)?;
        }
        write!(f, "  {:>w$}  ", "", w = qw + 2)?;
        for p in p0..=p1 {
            write!(f, " {:>width$}", p.to_string())?;
        }
        writeln!(f, "  (p)")
    }
}

fn bounds<'a>(mut keys: impl Iterator<Item = &'a Bidegree>) -> Option<(i32, i32, i32, i32)> {
    let &(p, q) = keys.next()?;
    Some(keys.fold((p, p, q, q), |(a, b, c, d), &(p, q)| {
        (a.min(p), b.max(p), c.min(q), d.max(q))
    }))
}

/// Which half of bijectivity failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapFailure {
    Injectivity,
    Surjectivity,
    Both,
}

impl MapFailure {
    /// Classifies an `m × n` map of rank `r`; `None` when bijective.
    pub fn classify(m: &Matrix) -> Option<Self> {
        let r = rank(m);
        match (r == m.cols(), r == m.rows()) {
            (true, true) => None,
            (false, true) => Some(MapFailure::Injectivity),
            (true, false) => Some(MapFailure::Surjectivity),
            (false, false) => Some(MapFailure::Both),
        }
    }
}

impl fmt::Display for MapFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MapFailure::Injectivity => "injectivity",
            MapFailure::Surjectivity => "surjectivity",
            MapFailure::Both => "injectivity and surjectivity",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DdbarWitness {
    pub bidegree: Bidegree,
    pub failure: MapFailure,
}

/// Whether the natural map `H_BC → H_∂̄` is bijective everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DdbarDecision {
    pub holds: bool,
    pub witness: Option<DdbarWitness>,
}

impl fmt::Display for DdbarDecision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.witness {
            None => write!(f, "{}", self.holds),
            Some(DdbarWitness {
                bidegree: (p, q),
                failure,
            }) => write!(f, "false (witness ({p},{q}): {failure} fails)"),
        }
    }
}

impl DoubleComplex {
    /// Cohomology class space of `theory` at `(p, q)` as numerator modulo
    /// denominator. For [`Theory::DeRham`] the pair is read as `(k, _)`.
    ///
    /// The complex is assumed valid; callers go through the checked entry
    /// points below.
    pub(crate) fn quotient(&self, theory: Theory, p: i32, q: i32) -> Quotient {
        let (numerator, denominator) = match theory {
            Theory::Dolbeault => (kernel_basis(&self.d2(p, q)), self.d2(p, q - 1).into_owned()),
            Theory::ConjugateDolbeault => {
                (kernel_basis(&self.d1(p, q)), self.d1(p - 1, q).into_owned())
            }
            Theory::BottChern => (
                kernel_basis(&self.d1(p, q).vcat(&self.d2(p, q))),
                self.d1(p - 1, q).mul(&self.d2(p - 1, q - 1)),
            ),
            Theory::Aeppli => (
                kernel_basis(&self.d1(p, q + 1).mul(&self.d2(p, q))),
                self.d1(p - 1, q).hcat(&self.d2(p, q - 1)),
            ),
            Theory::DeRham => (
                kernel_basis(&self.total_differential(p)),
                self.total_differential(p - 1),
            ),
        };
        Quotient::new(&numerator, &denominator).expect("blocks share the ambient space")
    }

    /// Bidegrees of `Tot^k`, in increasing `p`.
    pub fn total_summands(&self, k: i32) -> Vec<(Bidegree, usize)> {
        self.support().filter(|&((p, q), _)| p + q == k).collect()
    }

    pub fn total_dim_in_degree(&self, k: i32) -> usize {
        self.total_summands(k).iter().map(|&(_, d)| d).sum()
    }

    /// `∂₁ + ∂₂ : Tot^k → Tot^{k+1}`, with summands ordered by `p`.
    pub fn total_differential(&self, k: i32) -> Matrix {
        let src = self.total_summands(k);
        let dst = self.total_summands(k + 1);
        let offsets = |list: &[(Bidegree, usize)]| {
            let mut acc = 0;
            list.iter()
                .map(|&(b, d)| {
                    let o = acc;
                    acc += d;
                    (b, o)
                })
                .collect::<BTreeMap<_, _>>()
        };
        let (so, to) = (offsets(&src), offsets(&dst));
        let mut m = Matrix::zeros(dst.iter().map(|x| x.1).sum(), src.iter().map(|x| x.1).sum());
        for &((p, q), _) in &src {
            let c0 = so[&(p, q)];
            if let Some(&r0) = to.get(&(p + 1, q)) {
                m.set_block(r0, c0, &self.d1(p, q));
            }
            if let Some(&r0) = to.get(&(p, q + 1)) {
                m.set_block(r0, c0, &self.d2(p, q));
            }
        }
        m
    }

    fn total_degree_range(&self) -> Option<(i32, i32)> {
        let mut ks = self.bidegrees().map(|(p, q)| p + q);
        let first = ks.next()?;
        Some(ks.fold((first, first), |(a, b), k| (a.min(k), b.max(k))))
    }

    pub(crate) fn table_unchecked(&self, theory: Theory) -> CohomologyTable {
        let dims: Vec<(Bidegree, usize)> = match theory {
            Theory::DeRham => match self.total_degree_range() {
                None => Vec::new(),
                Some((lo, hi)) => (lo..=hi)
                    .map(|k| ((k, 0), self.quotient(theory, k, 0).dim()))
                    .collect(),
            },
            _ => self
                .bidegrees()
                .map(|(p, q)| ((p, q), self.quotient(theory, p, q).dim()))
                .collect(),
        };
        CohomologyTable::new(theory, dims)
    }

    /// The cohomology table of `theory`. Invalid complexes are rejected.
    pub fn cohomology(&self, theory: Theory) -> Result<CohomologyTable, ComplexError> {
        self.ensure_valid()?;
        Ok(self.table_unchecked(theory))
    }

    /// All five tables, validating once.
    pub fn all_cohomology(&self) -> Result<Vec<CohomologyTable>, ComplexError> {
        self.ensure_valid()?;
        Ok(Theory::ALL
            .iter()
            .map(|&t| self.table_unchecked(t))
            .collect())
    }

    /// Representatives of a basis of the given cohomology at `(p, q)`, one
    /// column per class.
    pub fn cohomology_basis(&self, theory: Theory, p: i32, q: i32) -> Result<Matrix, ComplexError> {
        self.ensure_valid()?;
        Ok(self.quotient(theory, p, q).reps().clone())
    }

    pub(crate) fn natural_map_unchecked(&self, p: i32, q: i32) -> Matrix {
        let bc = self.quotient(Theory::BottChern, p, q);
        let dolbeault = self.quotient(Theory::Dolbeault, p, q);
        dolbeault
            .classes_of(bc.reps())
            .expect("Bott-Chern representatives are ∂₂-closed")
    }

    /// Matrix of `H_BC^{p,q} → H_∂̄^{p,q}` induced by the identity, in the
    /// representative bases of [`Self::cohomology_basis`].
    pub fn natural_map_bc_to_dolbeault(&self, p: i32, q: i32) -> Result<Matrix, ComplexError> {
        self.ensure_valid()?;
        Ok(self.natural_map_unchecked(p, q))
    }

    /// The ∂∂̄-lemma criterion: the natural map from Bott-Chern to
    /// Dolbeault cohomology is bijective at every bidegree. The witness is
    /// the lexicographically first failing bidegree.
    pub fn check_ddbar(&self) -> Result<DdbarDecision, ComplexError> {
        self.ensure_valid()?;
        for (p, q) in self.bidegrees() {
            if let Some(failure) = MapFailure::classify(&self.natural_map_unchecked(p, q)) {
                return Ok(DdbarDecision {
                    holds: false,
                    witness: Some(DdbarWitness {
                        bidegree: (p, q),
                        failure,
                    }),
                });
            }
        }
        Ok(DdbarDecision {
            holds: true,
            witness: None,
        })
    }
}
