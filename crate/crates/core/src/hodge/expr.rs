use std::collections::BTreeMap;
use std::fmt;

use super::{blow_up, flag_bundle, kunneth, projective_bundle, DdbarFlag, HodgePolynomial};
use crate::error::{EvalError, HodgeError};
use crate::fixtures;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Leaf {
    Projective(u32),
    Torus(u32),
    Curve(u32),
    Hopf,
    Point,
    /// Inline diamond with unknown ∂∂̄ status.
    Diamond {
        n: u32,
        coeffs: BTreeMap<(u32, u32), u64>,
    },
}

impl Leaf {
    /// Checks range and connectedness (`h^{0,0} ≥ 1`) of a diamond literal.
    pub fn diamond(
        n: u32,
        entries: impl IntoIterator<Item = (u32, u32, u64)>,
    ) -> Result<Leaf, HodgeError> {
        let mut coeffs = BTreeMap::new();
        for (p, q, h) in entries {
            if p > n || q > n {
                return Err(HodgeError::OutOfRange { p, q, n });
            }
            if coeffs.insert((p, q), h).is_some() {
                return Err(HodgeError::InvalidParts(format!(
                    "coefficient ({p},{q}) given twice"
                )));
            }
        }
        coeffs.retain(|_, h| *h != 0);
        if !coeffs.contains_key(&(0, 0)) {
            return Err(HodgeError::Disconnected);
        }
        Ok(Leaf::Diamond { n, coeffs })
    }

    pub fn polynomial(&self) -> HodgePolynomial {
        match self {
            Leaf::Projective(n) => fixtures::projective_space(*n),
            Leaf::Torus(n) => fixtures::torus(*n),
            Leaf::Curve(g) => fixtures::curve(*g),
            Leaf::Hopf => fixtures::hopf(),
            Leaf::Point => fixtures::point(),
            Leaf::Diamond { n, coeffs } => {
                HodgePolynomial::from_map(*n, coeffs.clone(), DdbarFlag::Unknown, self.to_string())
            }
        }
    }
}

impl fmt::Display for Leaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Leaf::Projective(n) => write!(f, "P({n})"),
            Leaf::Torus(n) => write!(f, "torus({n})"),
            Leaf::Curve(g) => write!(f, "curve({g})"),
            Leaf::Hopf => f.write_str("hopf"),
            Leaf::Point => f.write_str("point"),
            Leaf::Diamond { n, coeffs } => {
                write!(f, "diamond({n}")?;
                for ((p, q), h) in coeffs {
                    write!(f, "; {p},{q},{h}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// A term of the construction language. `Display` gives the canonical
/// text, which parses back to an equal tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstructionExpr {
    Leaf(Leaf),
    Product(Box<ConstructionExpr>, Box<ConstructionExpr>),
    ProjBundle(Box<ConstructionExpr>, u32),
    BlowUp {
        ambient: Box<ConstructionExpr>,
        center: Box<ConstructionExpr>,
        r: u32,
    },
    FlagBundle(Box<ConstructionExpr>, Vec<u32>),
}

impl ConstructionExpr {
    pub fn leaf(l: Leaf) -> Self {
        ConstructionExpr::Leaf(l)
    }

    pub fn product(a: Self, b: Self) -> Self {
        ConstructionExpr::Product(Box::new(a), Box::new(b))
    }

    pub fn proj_bundle(a: Self, r: u32) -> Self {
        ConstructionExpr::ProjBundle(Box::new(a), r)
    }

    pub fn blow_up(ambient: Self, center: Self, r: u32) -> Self {
        ConstructionExpr::BlowUp {
            ambient: Box::new(ambient),
            center: Box::new(center),
            r,
        }
    }

    pub fn flag_bundle(a: Self, parts: Vec<u32>) -> Self {
        ConstructionExpr::FlagBundle(Box::new(a), parts)
    }

    fn head(&self) -> &'static str {
        match self {
            ConstructionExpr::Leaf(_) => "leaf",
            ConstructionExpr::Product(..) => "product",
            ConstructionExpr::ProjBundle(..) => "projbundle",
            ConstructionExpr::BlowUp { .. } => "blowup",
            ConstructionExpr::FlagBundle(..) => "flagbundle",
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            ConstructionExpr::Leaf(_) => 1,
            ConstructionExpr::Product(a, b) => 1 + a.size() + b.size(),
            ConstructionExpr::ProjBundle(a, _) | ConstructionExpr::FlagBundle(a, _) => 1 + a.size(),
            ConstructionExpr::BlowUp {
                ambient, center, ..
            } => 1 + ambient.size() + center.size(),
        }
    }

    /// Bottom-up evaluation. Errors carry the path from the root to the
    /// failing node, e.g. `product/left/blowup`.
    pub fn evaluate(&self) -> Result<HodgePolynomial, EvalError> {
        self.eval_at(self.head().to_string())
    }

    fn eval_at(&self, path: String) -> Result<HodgePolynomial, EvalError> {
        let child =
            |e: &ConstructionExpr, role: &str| e.eval_at(format!("{path}/{role}/{}", e.head()));
        let fail = |source: HodgeError| EvalError {
            path: path.clone(),
            source,
        };
        let h = match self {
            ConstructionExpr::Leaf(l) => l.polynomial(),
            ConstructionExpr::Product(a, b) => kunneth(&child(a, "left")?, &child(b, "right")?),
            ConstructionExpr::ProjBundle(a, r) => {
                projective_bundle(&child(a, "base")?, *r).map_err(fail)?
            }
            ConstructionExpr::BlowUp { ambient, center, r } => {
                let x = child(ambient, "ambient")?;
                let z = child(center, "center")?;
                blow_up(&x, &z, *r).map_err(fail)?
            }
            ConstructionExpr::FlagBundle(a, parts) => {
                flag_bundle(&child(a, "base")?, parts).map_err(fail)?
            }
        };
        Ok(h.with_name(self.to_string()))
    }
}

impl fmt::Display for ConstructionExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionExpr::Leaf(l) => write!(f, "{l}"),
            ConstructionExpr::Product(a, b) => write!(f, "product({a}, {b})"),
            ConstructionExpr::ProjBundle(a, r) => write!(f, "projbundle({a}, {r})"),
            ConstructionExpr::BlowUp { ambient, center, r } => {
                write!(f, "blowup({ambient}, {center}, {r})")
            }
            ConstructionExpr::FlagBundle(a, parts) => {
                let list: Vec<String> = parts.iter().map(u32::to_string).collect();
                write!(f, "flagbundle({a}, [{}])", list.join(", "))
            }
        }
    }
}
