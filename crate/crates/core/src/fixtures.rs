//! Built-in leaf diamonds and double complexes.
//!
//! The Lie-algebra complexes are the bigraded exterior algebras
//! `Λ^p⟨ω₁..ωₙ⟩ ⊗ Λ^q⟨ω̄₁..ω̄ₙ⟩` of invariant forms on a complex nilmanifold,
//! with `d` expanded from the structure equations by the graded Leibniz rule
//! and split by type into `∂` (= ∂₁) and `∂̄` (= ∂₂). The basis of `K^{p,q}`
//! is `ω_I ∧ ω̄_J`, ordered lexicographically by `(I, J)`; in a monomial the
//! plain generators come before the conjugated ones. σ is complex
//! conjugation of forms. These are finite models: whether they compute the
//! cohomology of the manifold is a fact from the literature, not something
//! this crate checks.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use num_traits::One;

use crate::complex::json;
use crate::error::{FormatError, HodgeError};
use crate::hodge::{DdbarFlag, HodgePolynomial};
use crate::linalg::{Matrix, Scalar};
use crate::DoubleComplex;

// ---------------------------------------------------------------------------
// leaf diamonds

/// ℂPⁿ: `Σ_{i=0}^{n} (xy)^i`.
pub fn projective_space(n: u32) -> HodgePolynomial {
    HodgePolynomial::new(
        n,
        (0..=n).map(|i| ((i, i), 1)),
        DdbarFlag::True,
        format!("P({n})"),
    )
    .expect("coefficients lie on the diagonal")
}

/// Complex torus of dimension `n`: `h^{p,q} = C(n,p)·C(n,q)`.
pub fn torus(n: u32) -> HodgePolynomial {
    let coeffs =
        (0..=n).flat_map(|p| (0..=n).map(move |q| ((p, q), binomial(n, p) * binomial(n, q))));
    HodgePolynomial::new(n, coeffs, DdbarFlag::True, format!("torus({n})")).expect("in range")
}

/// Compact Riemann surface of genus `g`: `1 + g·x + g·y + xy`.
pub fn curve(g: u32) -> HodgePolynomial {
    let g = u64::from(g);
    HodgePolynomial::new(
        1,
        [((0, 0), 1), ((1, 0), g), ((0, 1), g), ((1, 1), 1)],
        DdbarFlag::True,
        format!("curve({g})"),
    )
    .expect("in range")
}

/// The Hopf surface `(ℂ² ∖ 0)/⟨(z₁,z₂) ↦ (a₁z₁, a₂z₂)⟩` with `a₁^k = a₂^l`.
///
/// Only `h^{1,0} = 0` is taken as given. The rest is derived from the
/// Betti numbers `(1,1,0,1,1)` of `S¹ × S³`, degeneration of the Frölicher
/// spectral sequence on compact surfaces and Serre duality
/// `h^{p,q} = h^{2-p,2-q}`. It fails Hodge symmetry (`h^{1,0} ≠ h^{0,1}`),
/// so the ∂∂̄ flag is false.
pub fn hopf() -> HodgePolynomial {
    HodgePolynomial::new(
        2,
        [((0, 0), 1), ((0, 1), 1), ((2, 1), 1), ((2, 2), 1)],
        DdbarFlag::False,
        "hopf".into(),
    )
    .expect("in range")
}

pub fn point() -> HodgePolynomial {
    HodgePolynomial::new(0, [((0, 0), 1)], DdbarFlag::True, "point".into()).expect("in range")
}

pub const LEAF_NAMES: &str = "P(n), torus(n), curve(g), hopf, point";

/// Looks up a leaf by its textual name, e.g. `P(2)`, `curve(1)`, `hopf`.
pub fn leaf(name: &str) -> Result<HodgePolynomial, HodgeError> {
    let unknown = || HodgeError::UnknownLeaf {
        name: name.to_string(),
        available: LEAF_NAMES.to_string(),
    };
    let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    match compact.as_str() {
        "hopf" => return Ok(hopf()),
        "point" => return Ok(point()),
        _ => {}
    }
    let (head, arg) = compact
        .strip_suffix(')')
        .and_then(|s| s.split_once('('))
        .ok_or_else(unknown)?;
    let arg: u32 = arg.parse().map_err(|_| unknown())?;
    match head {
        "P" => Ok(projective_space(arg)),
        "torus" => Ok(torus(arg)),
        "curve" => Ok(curve(arg)),
        _ => Err(unknown()),
    }
}

fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * u64::from(n - i) / u64::from(i + 1))
}

// ---------------------------------------------------------------------------
// atoms

fn one() -> Matrix {
    Matrix::identity(1)
}

/// One-dimensional complex at `(p, q)`; carries σ = 1 when `p == q`.
pub fn dot(p: i32, q: i32) -> DoubleComplex {
    let mut k = DoubleComplex::new([((p, q), 1)]);
    if p == q {
        k.set_sigma(p, q, one()).expect("1x1");
    }
    k
}

/// The acyclic square on `(p,q), (p+1,q), (p,q+1), (p+1,q+1)` with
/// `∂₁ = 1` on the bottom edge, `∂₁ = -1` on the top edge and `∂₂ = 1` on
/// both vertical edges. On the diagonal (`p == q`) it carries the real
/// structure fixing the corners (with sign `-1` on the top corner) and
/// swapping the two side vertices.
pub fn square(p: i32, q: i32) -> DoubleComplex {
    let mut k = DoubleComplex::new([
        ((p, q), 1),
        ((p + 1, q), 1),
        ((p, q + 1), 1),
        ((p + 1, q + 1), 1),
    ]);
    k.set_d1(p, q, one()).expect("1x1");
    k.set_d1(p, q + 1, one().neg()).expect("1x1");
    k.set_d2(p, q, one()).expect("1x1");
    k.set_d2(p + 1, q, one()).expect("1x1");
    if p == q {
        k.set_sigma(p, p, one()).expect("1x1");
        k.set_sigma(p + 1, p, one()).expect("1x1");
        k.set_sigma(p, p + 1, one()).expect("1x1");
        k.set_sigma(p + 1, p + 1, one().neg()).expect("1x1");
    }
    k
}

/// Length-two zigzag `(p,q) → (p+1,q)` with `∂₁ = 1`.
pub fn zigzag_l(p: i32, q: i32) -> DoubleComplex {
    DoubleComplex::new([((p, q), 1), ((p + 1, q), 1)])
        .with_d1(p, q, one())
        .expect("1x1")
}

/// Sum of dots at `(i, i)` for `0 ≤ i ≤ n`, the finite model of ℂPⁿ.
pub fn projective_space_model(n: u32) -> DoubleComplex {
    let parts: Vec<DoubleComplex> = (0..=n as i32).map(|i| dot(i, i)).collect();
    crate::constructions::direct_sum(&parts)
}

// ---------------------------------------------------------------------------
// nilmanifold complexes

/// `d` of one generator: a sum of `c · g_a ∧ g_b`. Generator `i < n` is
/// `ω_{i+1}`, generator `n + i` is `ω̄_{i+1}`.
pub type StructureEquation = Vec<(Scalar, usize, usize)>;

/// Sorts `gens` in place, returning the sign of the permutation, or `None`
/// when a generator repeats.
fn sort_with_sign(gens: &mut [usize]) -> Option<i64> {
    let mut sign = 1;
    for i in 1..gens.len() {
        let mut j = i;
        while j > 0 && gens[j - 1] > gens[j] {
            gens.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if gens.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// The double complex of invariant forms of a complex nilpotent Lie algebra
/// with `n` generators, given `dω_i` for the plain generators. The
/// equations of `ω̄_i` are their conjugates.
pub fn nilmanifold_complex(n: usize, equations: &[StructureEquation]) -> DoubleComplex {
    assert_eq!(equations.len(), n, "one structure equation per generator");
    let bar = |g: usize| if g < n { g + n } else { g - n };
    let mut d_gen: Vec<StructureEquation> = equations.to_vec();
    d_gen.extend(equations.iter().map(|eq| {
        eq.iter()
            .map(|(c, a, b)| (c.conj(), bar(*a), bar(*b)))
            .collect()
    }));

    // basis monomials per bidegree, as sorted generator lists
    let mut bases: HashMap<(i32, i32), Vec<Vec<usize>>> = HashMap::new();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    for p in 0..=n {
        for q in 0..=n {
            let mut list = Vec::new();
            for i in combinations(n, p) {
                for j in combinations(n, q) {
                    let mono: Vec<usize> =
                        i.iter().copied().chain(j.iter().map(|&x| x + n)).collect();
                    index.insert(mono.clone(), list.len());
                    list.push(mono);
                }
            }
            bases.insert((p as i32, q as i32), list);
        }
    }
    let bidegree_of = |mono: &[usize]| {
        let p = mono.iter().filter(|&&g| g < n).count() as i32;
        (p, mono.len() as i32 - p)
    };

    let mut k = DoubleComplex::new(bases.iter().map(|(&b, l)| (b, l.len())));
    for p in 0..=n as i32 {
        for q in 0..=n as i32 {
            let src = &bases[&(p, q)];
            let mut d1 = Matrix::zeros(k.dim(p + 1, q), src.len());
            let mut d2 = Matrix::zeros(k.dim(p, q + 1), src.len());
            for (col, mono) in src.iter().enumerate() {
                for (pos, &g) in mono.iter().enumerate() {
                    let leibniz = if pos % 2 == 0 { 1 } else { -1 };
                    for (c, a, b) in &d_gen[g] {
                        let mut term: Vec<usize> = mono[..pos].to_vec();
                        term.extend([*a, *b]);
                        term.extend_from_slice(&mono[pos + 1..]);
                        let Some(sign) = sort_with_sign(&mut term) else {
                            continue;
                        };
                        let coeff = c * &Scalar::from_int(leibniz * sign);
                        let row = index[&term];
                        let target = if bidegree_of(&term) == (p + 1, q) {
                            &mut d1
                        } else {
                            assert_eq!(bidegree_of(&term), (p, q + 1), "non-integrable structure");
                            &mut d2
                        };
                        target[(row, col)] += &coeff;
                    }
                }
            }
            k.set_d1(p, q, d1).expect("shape from basis");
            k.set_d2(p, q, d2).expect("shape from basis");

            // σ(ω_I ∧ ω̄_J) = ω̄_I ∧ ω_J, re-sorted into the (q,p) basis
            let mut sigma = Matrix::zeros(k.dim(q, p), src.len());
            for (col, mono) in src.iter().enumerate() {
                let mut image: Vec<usize> = mono.iter().map(|&g| bar(g)).collect();
                let sign = sort_with_sign(&mut image).expect("distinct generators");
                sigma[(index[&image], col)] = Scalar::from_int(sign);
            }
            k.set_sigma(p, q, sigma).expect("shape from basis");

            let names = src.iter().map(|m| monomial_label(m, n)).collect();
            k.set_labels(p, q, names)
                .expect("one label per basis vector");
        }
    }
    k
}

fn monomial_label(mono: &[usize], n: usize) -> String {
    if mono.is_empty() {
        return "1".into();
    }
    mono.iter()
        .map(|&g| {
            if g < n {
                format!("ω{}", g + 1)
            } else {
                format!("ω̄{}", g - n + 1)
            }
        })
        .collect::<Vec<_>>()
        .join("∧")
}

/// Iwasawa manifold: `dω₁ = dω₂ = 0`, `dω₃ = -ω₁∧ω₂`. So `∂ω₃ = -ω₁∧ω₂`,
/// `∂̄ω₃ = 0` and `∂̄ω̄₃ = -ω̄₁∧ω̄₂`. Total dimension 64.
pub fn iwasawa() -> DoubleComplex {
    let m1 = -Scalar::one();
    nilmanifold_complex(3, &[vec![], vec![], vec![(m1, 0, 1)]])
}

/// Kodaira-Thurston surface: `dω₁ = 0`, `dω₂ = ω₁∧ω̄₁`. So
/// `∂̄ω₂ = ω₁∧ω̄₁` and `∂ω̄₂ = -ω₁∧ω̄₁`. Total dimension 16.
pub fn kodaira_thurston() -> DoubleComplex {
    nilmanifold_complex(2, &[vec![], vec![(Scalar::one(), 0, 2)]])
}

pub const COMPLEX_NAMES: [&str; 5] = ["dot", "square", "zigzag-l", "iwasawa", "kodaira-thurston"];

/// Looks up a built-in complex. The atoms accept an optional position,
/// e.g. `dot(2,3)`; without it they sit at `(0,0)`.
pub fn builtin_complex(name: &str) -> Result<DoubleComplex, HodgeError> {
    let unknown = || HodgeError::UnknownLeaf {
        name: name.to_string(),
        available: COMPLEX_NAMES.join(", "),
    };
    let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    let (head, at) = match compact.strip_suffix(')').and_then(|s| s.split_once('(')) {
        Some((head, args)) => {
            let (a, b) = args.split_once(',').ok_or_else(unknown)?;
            let a: i32 = a.parse().map_err(|_| unknown())?;
            let b: i32 = b.parse().map_err(|_| unknown())?;
            (head.to_string(), Some((a, b)))
        }
        None => (compact.clone(), None),
    };
    let head = head.replace('_', "-");
    let (p, q) = at.unwrap_or((0, 0));
    match (head.as_str(), at) {
        ("dot", _) => Ok(dot(p, q)),
        ("square", _) => Ok(square(p, q)),
        ("zigzag-l", _) => Ok(zigzag_l(p, q)),
        ("iwasawa", None) => Ok(iwasawa()),
        ("kodaira-thurston", None) => Ok(kodaira_thurston()),
        _ => Err(unknown()),
    }
}

// ---------------------------------------------------------------------------
// files

/// Writes the canonical JSON form of `k` to `path`.
pub fn save(k: &DoubleComplex, path: &Path) -> Result<(), FormatError> {
    fs::write(path, json::to_canonical_string(k)).map_err(|e| FormatError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Reads and validates a complex from `path`.
pub fn load(path: &Path) -> Result<DoubleComplex, FormatError> {
    let text = fs::read_to_string(path).map_err(|e| FormatError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    json::from_str(&text)
}
