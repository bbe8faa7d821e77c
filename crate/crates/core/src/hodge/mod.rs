//! Hodge diamonds as polynomials `Σ h^{p,q} x^p y^q` and the dimension
//! formulas for products, projective bundles, flag bundles and blow-ups.

mod expr;
mod formulas;
mod parser;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

pub use expr::{ConstructionExpr, Leaf};
pub use formulas::{
    blow_up, flag_bundle, flag_dimension, gaussian_multinomial, kunneth, lh_consistency,
    projective_bundle, q_complete_obstruction, LhDecision, QCompleteReport,
};
pub use parser::parse_expr;

use crate::error::HodgeError;

/// Whether the ∂∂̄-lemma holds. Products, bundles and blow-ups satisfy it
/// exactly when all inputs do, so flags combine with [`DdbarFlag::and`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DdbarFlag {
    True,
    False,
    Unknown,
}

impl DdbarFlag {
    /// `false` wins, then `unknown`.
    pub fn and(self, other: DdbarFlag) -> DdbarFlag {
        use DdbarFlag::*;
        match (self, other) {
            (False, _) | (_, False) => False,
            (True, True) => True,
            _ => Unknown,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            DdbarFlag::True => "true",
            DdbarFlag::False => "false",
            DdbarFlag::Unknown => "unknown",
        }
    }
}

impl fmt::Display for DdbarFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DdbarFlag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "true" => Ok(DdbarFlag::True),
            "false" => Ok(DdbarFlag::False),
            "unknown" => Ok(DdbarFlag::Unknown),
            _ => Err(format!("expected true, false or unknown, found {s:?}")),
        }
    }
}

/// A Hodge diamond of a compact complex manifold of dimension `n`.
///
/// Equality compares `n`, the coefficients and the ∂∂̄ flag; the name is
/// only for display.
#[derive(Debug, Clone)]
pub struct HodgePolynomial {
    n: u32,
    coeffs: BTreeMap<(u32, u32), u64>,
    ddbar: DdbarFlag,
    name: String,
}

impl PartialEq for HodgePolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.coeffs == other.coeffs && self.ddbar == other.ddbar
    }
}

impl Eq for HodgePolynomial {}

impl HodgePolynomial {
    /// Repeated bidegrees are added; zero coefficients are dropped.
    pub fn new(
        n: u32,
        coeffs: impl IntoIterator<Item = ((u32, u32), u64)>,
        ddbar: DdbarFlag,
        name: String,
    ) -> Result<Self, HodgeError> {
        let mut map = BTreeMap::new();
        for ((p, q), h) in coeffs {
            if p > n || q > n {
                return Err(HodgeError::OutOfRange { p, q, n });
            }
            if h != 0 {
                *map.entry((p, q)).or_insert(0) += h;
            }
        }
        Ok(Self {
            n,
            coeffs: map,
            ddbar,
            name,
        })
    }

    /// Internal constructor for results of the formulas, which stay in
    /// range by construction.
    pub(crate) fn from_map(
        n: u32,
        coeffs: BTreeMap<(u32, u32), u64>,
        ddbar: DdbarFlag,
        name: String,
    ) -> Self {
        debug_assert!(coeffs.keys().all(|&(p, q)| p <= n && q <= n));
        let coeffs = coeffs.into_iter().filter(|&(_, h)| h != 0).collect();
        Self {
            n,
            coeffs,
            ddbar,
            name,
        }
    }

    pub fn dim(&self) -> u32 {
        self.n
    }

    pub fn coeff(&self, p: u32, q: u32) -> u64 {
        self.coeffs.get(&(p, q)).copied().unwrap_or(0)
    }

    /// Nonzero coefficients in lexicographic order of `(p, q)`.
    pub fn coeffs(&self) -> impl Iterator<Item = ((u32, u32), u64)> + '_ {
        self.coeffs.iter().map(|(&k, &h)| (k, h))
    }

    pub fn ddbar(&self) -> DdbarFlag {
        self.ddbar
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_ddbar(mut self, ddbar: DdbarFlag) -> Self {
        self.ddbar = ddbar;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Sum of all coefficients.
    pub fn total(&self) -> u64 {
        self.coeffs.values().sum()
    }

    pub fn is_hodge_symmetric(&self) -> bool {
        self.coeffs
            .iter()
            .all(|(&(p, q), &h)| self.coeff(q, p) == h)
    }

    /// `Σ_{p+q=k} h^{p,q}` for `k = 0..=2n`, regardless of the ∂∂̄ flag.
    pub fn hodge_sums(&self) -> Vec<u64> {
        let mut out = vec![0; 2 * self.n as usize + 1];
        for (&(p, q), &h) in &self.coeffs {
            out[(p + q) as usize] += h;
        }
        out
    }

    /// Betti numbers, which equal the Hodge sums only when the ∂∂̄-lemma
    /// holds; `None` otherwise.
    pub fn betti(&self) -> Option<Vec<u64>> {
        (self.ddbar == DdbarFlag::True).then(|| self.hodge_sums())
    }

    /// Rows of the diamond, row `k` listing `h^{p,k-p}` for `p` from high to
    /// low, zeros included.
    pub fn diamond_rows(&self) -> Vec<Vec<u64>> {
        let n = self.n;
        (0..=2 * n)
            .map(|k| {
                let hi = k.min(n);
                let lo = k.saturating_sub(n);
                (lo..=hi).rev().map(|p| self.coeff(p, k - p)).collect()
            })
            .collect()
    }

    /// The diamond as a centred triangle.
    pub fn render_diamond(&self) -> String {
        let rows = self.diamond_rows();
        let w = rows
            .iter()
            .flatten()
            .map(|h| h.to_string().len())
            .max()
            .unwrap_or(1);
        let widest = self.n as usize + 1;
        let mut out = String::new();
        for row in rows {
            out.push_str(&" ".repeat((widest - row.len()) * w));
            let cells: Vec<String> = row.iter().map(|h| format!("{h:>w$}")).collect();
            out.push_str(&cells.join(&" ".repeat(w)));
            out.push('\n');
        }
        out
    }

    /// `{"n", "coeffs": [[p,q,h]], "ddbar", "betti"?}`.
    pub fn to_json(&self) -> Value {
        let coeffs: Vec<Value> = self.coeffs().map(|((p, q), h)| json!([p, q, h])).collect();
        let mut v = json!({
            "n": self.n,
            "coeffs": coeffs,
            "ddbar": self.ddbar.as_str(),
        });
        if let Some(b) = self.betti() {
            v["betti"] = json!(b);
        }
        v
    }
}

impl fmt::Display for HodgePolynomial {
    /// `1 + 2xy + x^2y^2`, terms ordered by total degree, then by `p`
    /// descending.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut terms: Vec<_> = self.coeffs().collect();
        terms.sort_by_key(|&((p, q), _)| (p + q, std::cmp::Reverse(p)));
        let var = |v: &str, e: u32| match e {
            0 => String::new(),
            1 => v.to_string(),
            _ => format!("{v}^{e}"),
        };
        let parts: Vec<String> = terms
            .into_iter()
            .map(|((p, q), h)| {
                let mono = format!("{}{}", var("x", p), var("y", q));
                match (h, mono.is_empty()) {
                    (_, true) => h.to_string(),
                    (1, false) => mono,
                    _ => format!("{h}{mono}"),
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
