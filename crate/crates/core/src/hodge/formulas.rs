use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::HodgePolynomial;
use crate::error::HodgeError;

fn product_map(a: &HodgePolynomial, b: &HodgePolynomial) -> BTreeMap<(u32, u32), u64> {
    let mut out = BTreeMap::new();
    for ((p, q), h) in a.coeffs() {
        for ((r, s), k) in b.coeffs() {
            *out.entry((p + r, q + s)).or_insert(0) += h * k;
        }
    }
    out
}

/// `h` times `Σ_i c_i (xy)^i`.
fn times_diagonal(h: &HodgePolynomial, c: &[u64]) -> BTreeMap<(u32, u32), u64> {
    let mut out = BTreeMap::new();
    for ((p, q), a) in h.coeffs() {
        for (i, &b) in c.iter().enumerate() {
            let i = i as u32;
            *out.entry((p + i, q + i)).or_insert(0) += a * b;
        }
    }
    out
}

/// Diamond of `X × Y`.
pub fn kunneth(x: &HodgePolynomial, y: &HodgePolynomial) -> HodgePolynomial {
    HodgePolynomial::from_map(
        x.dim() + y.dim(),
        product_map(x, y),
        x.ddbar().and(y.ddbar()),
        format!("product({}, {})", x.name(), y.name()),
    )
}

/// Diamond of the projectivisation of a rank-`r` bundle over `X`:
/// `h · Σ_{i<r} (xy)^i`.
pub fn projective_bundle(h: &HodgePolynomial, r: u32) -> Result<HodgePolynomial, HodgeError> {
    if r == 0 {
        return Err(HodgeError::InvalidRank(r));
    }
    Ok(HodgePolynomial::from_map(
        h.dim() + r - 1,
        times_diagonal(h, &vec![1; r as usize]),
        h.ddbar(),
        format!("projbundle({}, {r})", h.name()),
    ))
}

/// Diamond of the blow-up of `X` along a codimension-`r` submanifold `Z`:
/// `h_X + h_Z · Σ_{i=1}^{r-1} (xy)^i`.
pub fn blow_up(
    x: &HodgePolynomial,
    z: &HodgePolynomial,
    r: u32,
) -> Result<HodgePolynomial, HodgeError> {
    if r < 2 {
        return Err(HodgeError::InvalidCodimension(r));
    }
    if z.is_zero() {
        return Err(HodgeError::EmptyCenter);
    }
    if z.dim() + r != x.dim() {
        return Err(HodgeError::CenterDimension {
            ambient: x.dim(),
            center: z.dim(),
            codim: r,
        });
    }
    let mut c = vec![1; r as usize];
    c[0] = 0;
    let mut coeffs = times_diagonal(z, &c);
    for (k, h) in x.coeffs() {
        *coeffs.entry(k).or_insert(0) += h;
    }
    Ok(HodgePolynomial::from_map(
        x.dim(),
        coeffs,
        x.ddbar().and(z.ddbar()),
        format!("blowup({}, {}, {r})", x.name(), z.name()),
    ))
}

fn check_parts(parts: &[u32]) -> Result<(), HodgeError> {
    if parts.is_empty() {
        return Err(HodgeError::InvalidParts("empty flag type".into()));
    }
    if parts.contains(&0) {
        return Err(HodgeError::InvalidParts(
            "flag type parts must be >= 1".into(),
        ));
    }
    Ok(())
}

/// Dimension `Σ_{i<j} n_i n_j` of the flag manifold of type `parts`.
pub fn flag_dimension(parts: &[u32]) -> u32 {
    let mut seen = 0;
    let mut d = 0;
    for &n in parts {
        d += seen * n;
        seen += n;
    }
    d
}

fn too_large() -> HodgeError {
    HodgeError::InvalidParts("flag type too large for 128-bit coefficients".into())
}

fn mul_poly(a: &[i128], b: &[i128]) -> Result<Vec<i128>, HodgeError> {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            let t = x.checked_mul(y).ok_or_else(too_large)?;
            out[i + j] = out[i + j].checked_add(t).ok_or_else(too_large)?;
        }
    }
    Ok(out)
}

/// Exact division by a polynomial with leading coefficient 1.
fn div_monic(num: &[i128], den: &[i128]) -> Vec<i128> {
    debug_assert_eq!(den.last(), Some(&1));
    let mut rem = num.to_vec();
    let d = den.len() - 1;
    let mut quot = vec![0i128; num.len() - d];
    for k in (0..quot.len()).rev() {
        let c = rem[k + d];
        quot[k] = c;
        for (j, &b) in den.iter().enumerate() {
            rem[k + j] -= c * b;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "division was not exact");
    quot
}

fn q_integer(m: u32) -> Vec<i128> {
    vec![1; m as usize]
}

fn q_factorial(m: u32) -> Result<Vec<i128>, HodgeError> {
    (1..=m).try_fold(vec![1i128], |acc, k| mul_poly(&acc, &q_integer(k)))
}

/// `[n; n₁,…,n_r]_t = [n]_t! / ([n₁]_t! ⋯ [n_r]_t!)`, coefficients from
/// `t⁰` up to `t^D`, `D = Σ_{i<j} n_i n_j`. It is the Poincaré polynomial
/// (in `t = xy`) of the flag manifold of type `parts`.
pub fn gaussian_multinomial(parts: &[u32]) -> Result<Vec<u64>, HodgeError> {
    check_parts(parts)?;
    let n: u32 = parts.iter().sum();
    let mut g = q_factorial(n)?;
    for &m in parts {
        for k in 2..=m {
            g = div_monic(&g, &q_integer(k));
        }
    }
    g.into_iter()
        .map(|c| u64::try_from(c).map_err(|_| too_large()))
        .collect()
}

/// Diamond of the bundle of flags of type `parts` in a vector bundle over
/// `X`: `h · G(xy)` with `G` the Gaussian multinomial.
pub fn flag_bundle(h: &HodgePolynomial, parts: &[u32]) -> Result<HodgePolynomial, HodgeError> {
    let g = gaussian_multinomial(parts)?;
    let list: Vec<String> = parts.iter().map(u32::to_string).collect();
    Ok(HodgePolynomial::from_map(
        h.dim() + flag_dimension(parts),
        times_diagonal(h, &g),
        h.ddbar(),
        format!("flagbundle({}, [{}])", h.name(), list.join(", ")),
    ))
}

/// A space carrying a nonzero class in `H^{r-1,r-1}` from the exceptional
/// divisor or the bundle cannot be strongly q-complete for `1 ≤ q ≤ r-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QCompleteReport {
    pub r: u32,
    /// `h^{r-1,r-1}`.
    pub coefficient: u64,
    pub excluded: Vec<u32>,
}

impl fmt::Display for QCompleteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.r - 1;
        write!(
            f,
            "h^({k},{k}) = {} >= 1: not strongly q-complete for 1 <= q <= {k}",
            self.coefficient
        )
    }
}

/// Obstruction report for a blow-up along a codimension-`r` center or a
/// projectivised rank-`r` bundle with diamond `h`.
pub fn q_complete_obstruction(h: &HodgePolynomial, r: u32) -> Result<QCompleteReport, HodgeError> {
    if r < 2 {
        return Err(HodgeError::InvalidCodimension(r));
    }
    let coefficient = h.coeff(r - 1, r - 1);
    if coefficient == 0 {
        return Err(HodgeError::InternalInconsistency(format!(
            "h^({0},{0}) vanishes for a space built with parameter {r}",
            r - 1
        )));
    }
    Ok(QCompleteReport {
        r,
        coefficient,
        excluded: (1..r).collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LhDecision {
    pub holds: bool,
    /// First `(p, q)` in lexicographic order where the coefficients differ.
    pub witness: Option<(u32, u32)>,
}

impl fmt::Display for LhDecision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.witness {
            None => f.write_str("true"),
            Some((p, q)) => write!(f, "false (witness ({p},{q}))"),
        }
    }
}

/// Whether `total = base · fiber`, the dimension identity a Leray–Hirsch
/// splitting would force. Only this necessary condition is checked.
pub fn lh_consistency(
    total: &HodgePolynomial,
    fiber: &HodgePolynomial,
    base: &HodgePolynomial,
) -> LhDecision {
    let expected = product_map(base, fiber);
    let keys: BTreeSet<(u32, u32)> = expected
        .keys()
        .copied()
        .chain(total.coeffs().map(|(k, _)| k))
        .collect();
    let witness = keys
        .into_iter()
        .find(|&(p, q)| expected.get(&(p, q)).copied().unwrap_or(0) != total.coeff(p, q));
    LhDecision {
        holds: witness.is_none(),
        witness,
    }
}
