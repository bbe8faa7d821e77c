//! Test oracles and generators shared by the integration suites.
//!
//! The rank oracle works modulo the prime `P = 10⁹ + 9` with `i` sent to a
//! square root of `-1`, so it shares no arithmetic with the exact code it
//! checks. For the small integer data used in the fixtures the two ranks
//! agree.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use hodge::complex::Theory;
use hodge::constructions::{direct_sum, Morphism};
use hodge::fixtures::{dot, square};
use hodge::linalg::{rank, solve};
use hodge::{Bidegree, DoubleComplex, Matrix, Scalar};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const P: u64 = 1_000_000_009;

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1u64;
    b %= P;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % P as u128) as u64;
        }
        b = (b as u128 * b as u128 % P as u128) as u64;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64) -> u64 {
    pow_mod(a, P - 2)
}

/// A square root of `-1` mod `P`.
pub fn sqrt_minus_one() -> u64 {
    (2..)
        .map(|x| pow_mod(x, (P - 1) / 4))
        .find(|&r| (r as u128 * r as u128 % P as u128) as u64 == P - 1)
        .unwrap()
}

fn big_mod(x: &BigInt) -> u64 {
    let p = BigInt::from(P);
    let r = ((x % &p) + &p) % &p;
    r.to_u64().unwrap()
}

fn scalar_mod(s: &Scalar, i: u64) -> u64 {
    let part = |r: &num_rational::BigRational| {
        let n = big_mod(r.numer());
        let d = big_mod(r.denom());
        (n as u128 * inv_mod(d) as u128 % P as u128) as u64
    };
    let re = part(s.re());
    let im = part(s.im());
    ((re as u128 + im as u128 * i as u128) % P as u128) as u64
}

/// Row-major matrix over `Z/P`.
#[derive(Clone, Debug)]
pub struct ModMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl ModMatrix {
    pub fn from_matrix(m: &Matrix) -> Self {
        let i = sqrt_minus_one();
        ModMatrix {
            rows: m.rows(),
            cols: m.cols(),
            data: m.entries().iter().map(|s| scalar_mod(s, i)).collect(),
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ModMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn mul(&self, o: &ModMatrix) -> ModMatrix {
        assert_eq!(self.cols, o.rows);
        let mut out = ModMatrix::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for c in 0..o.cols {
                let mut acc = 0u128;
                for k in 0..self.cols {
                    acc += self.data[r * self.cols + k] as u128 * o.data[k * o.cols + c] as u128;
                    acc %= P as u128;
                }
                out.data[r * o.cols + c] = acc as u64;
            }
        }
        out
    }

    pub fn vcat(&self, o: &ModMatrix) -> ModMatrix {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&o.data);
        ModMatrix {
            rows: self.rows + o.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn hcat(&self, o: &ModMatrix) -> ModMatrix {
        assert_eq!(self.rows, o.rows);
        let mut out = ModMatrix::zeros(self.rows, self.cols + o.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[r * out.cols + c] = self.data[r * self.cols + c];
            }
            for c in 0..o.cols {
                out.data[r * out.cols + self.cols + c] = o.data[r * o.cols + c];
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut a = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut r = 0;
        for c in 0..cols {
            let Some(piv) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
                continue;
            };
            for k in 0..cols {
                a.swap(piv * cols + k, r * cols + k);
            }
            let inv = inv_mod(a[r * cols + c]);
            for i in 0..rows {
                if i != r && a[i * cols + c] != 0 {
                    let f = (a[i * cols + c] as u128 * inv as u128 % P as u128) as u64;
                    for k in 0..cols {
                        let sub = (f as u128 * a[r * cols + k] as u128 % P as u128) as u64;
                        a[i * cols + k] = (a[i * cols + k] + P - sub) % P;
                    }
                }
            }
            r += 1;
            if r == rows {
                break;
            }
        }
        r
    }
}

fn m(k: &DoubleComplex, which: u8, p: i32, q: i32) -> ModMatrix {
    ModMatrix::from_matrix(&match which {
        1 => k.d1(p, q).into_owned(),
        _ => k.d2(p, q).into_owned(),
    })
}

/// Cohomology dimension by rank counting mod `P`.
pub fn oracle_dim(k: &DoubleComplex, theory: Theory, p: i32, q: i32) -> usize {
    let n = k.dim(p, q);
    match theory {
        Theory::Dolbeault => n - m(k, 2, p, q).rank() - m(k, 2, p, q - 1).rank(),
        Theory::ConjugateDolbeault => n - m(k, 1, p, q).rank() - m(k, 1, p - 1, q).rank(),
        Theory::BottChern => {
            let closed = n - m(k, 1, p, q).vcat(&m(k, 2, p, q)).rank();
            closed - m(k, 1, p - 1, q).mul(&m(k, 2, p - 1, q - 1)).rank()
        }
        Theory::Aeppli => {
            let ker = n - m(k, 1, p, q + 1).mul(&m(k, 2, p, q)).rank();
            ker - m(k, 1, p - 1, q).hcat(&m(k, 2, p, q - 1)).rank()
        }
        Theory::DeRham => {
            // (p, _) is read as the total degree
            let d = |t: i32| ModMatrix::from_matrix(&total_differential_oracle(k, t));
            let dim: usize = k
                .support()
                .filter(|((a, b), _)| a + b == p)
                .map(|(_, d)| d)
                .sum();
            dim - d(p).rank() - d(p - 1).rank()
        }
    }
}

/// Total differential assembled independently of the library: summands
/// ordered by `p`, `∂₁` and `∂₂` placed by their target bidegree.
pub fn total_differential_oracle(k: &DoubleComplex, t: i32) -> Matrix {
    let summands = |t: i32| -> Vec<(Bidegree, usize)> {
        k.support().filter(|((p, q), _)| p + q == t).collect()
    };
    let (src, dst) = (summands(t), summands(t + 1));
    let offset = |list: &[(Bidegree, usize)], b: Bidegree| -> Option<usize> {
        let mut o = 0;
        for &(x, d) in list {
            if x == b {
                return Some(o);
            }
            o += d;
        }
        None
    };
    let rows: usize = dst.iter().map(|x| x.1).sum();
    let cols: usize = src.iter().map(|x| x.1).sum();
    let mut out = vec![vec![Scalar::zero(); cols]; rows];
    for &((p, q), _) in &src {
        let c0 = offset(&src, (p, q)).unwrap();
        for (target, block) in [((p + 1, q), k.d1(p, q)), ((p, q + 1), k.d2(p, q))] {
            if let Some(r0) = offset(&dst, target) {
                for r in 0..block.rows() {
                    for c in 0..block.cols() {
                        out[r0 + r][c0 + c] = block[(r, c)].clone();
                    }
                }
            }
        }
    }
    if rows == 0 || cols == 0 {
        return Matrix::zeros(rows, cols);
    }
    Matrix::from_rows(out).unwrap()
}

/// Every bidegree where some theory could be nonzero.
pub fn hull(k: &DoubleComplex) -> Vec<Bidegree> {
    let mut s = BTreeSet::new();
    for (p, q) in k.bidegrees() {
        s.insert((p, q));
        s.insert((q, p));
    }
    s.into_iter().collect()
}

/// `Σ_w t^{inv(w)}` over the distinct permutations of the multiset
/// `{1^{n₁}, …, r^{n_r}}`, by direct enumeration.
pub fn inversion_polynomial(parts: &[u32]) -> Vec<u64> {
    let mut word: Vec<usize> = parts
        .iter()
        .enumerate()
        .flat_map(|(i, &n)| std::iter::repeat_n(i, n as usize))
        .collect();
    let mut out = Vec::new();
    loop {
        let inv = (0..word.len())
            .flat_map(|i| (i + 1..word.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| word[i] > word[j])
            .count();
        if out.len() <= inv {
            out.resize(inv + 1, 0);
        }
        out[inv] += 1;
        if !next_permutation(&mut word) {
            return out;
        }
    }
}

fn next_permutation(w: &mut [usize]) -> bool {
    let Some(i) = (1..w.len()).rev().find(|&i| w[i - 1] < w[i]) else {
        return false;
    };
    let j = (i..w.len()).rev().find(|&j| w[j] > w[i - 1]).unwrap();
    w.swap(i - 1, j);
    w[i..].reverse();
    true
}

/// All compositions (ordered lists of positive parts) of `n`.
pub fn compositions(n: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    (1..=n)
        .flat_map(|first| {
            compositions(n - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

// ---------------------------------------------------------------------------
// random short exact sequences

fn small_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    let re = rng.gen_range(-2..=2);
    let im = if rng.gen_bool(0.3) {
        rng.gen_range(-1..=1)
    } else {
        0
    };
    Scalar::gaussian(re, im)
}

/// A random invertible `n × n` matrix with small Gaussian-integer entries.
pub fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    loop {
        let rows: Vec<Vec<Scalar>> = (0..n)
            .map(|_| (0..n).map(|_| small_scalar(rng)).collect())
            .collect();
        let m = if n == 0 {
            Matrix::zeros(0, 0)
        } else {
            Matrix::from_rows(rows).unwrap()
        };
        if rank(&m) == n {
            return m;
        }
    }
}

fn inverse(m: &Matrix) -> Matrix {
    solve(m, &Matrix::identity(m.rows())).unwrap().unwrap()
}

fn atom(rng: &mut ChaCha8Rng) -> DoubleComplex {
    let (p, q) = (rng.gen_range(-1..=1), rng.gen_range(-1..=1));
    let one = Matrix::identity(1);
    match rng.gen_range(0..4) {
        0 => DoubleComplex::new([((p, q), 1)]),
        1 => DoubleComplex::new([((p, q), 1), ((p + 1, q), 1)])
            .with_d1(p, q, one)
            .unwrap(),
        2 => DoubleComplex::new([((p, q), 1), ((p, q + 1), 1)])
            .with_d2(p, q, one)
            .unwrap(),
        _ => {
            let mut s = square(p, q);
            s.clear_sigma();
            s
        }
    }
}

/// Applies the change of basis `v ↦ T v` at every bidegree.
fn conjugate(k: &DoubleComplex, t: &BTreeMap<Bidegree, Matrix>) -> DoubleComplex {
    let get = |b: Bidegree| {
        t.get(&b)
            .cloned()
            .unwrap_or_else(|| Matrix::identity(k.dim(b.0, b.1)))
    };
    let mut out = DoubleComplex::new(k.support());
    for (b, m) in k.d1_blocks() {
        let nm = get((b.0 + 1, b.1)).mul(m).mul(&inverse(&get(b)));
        out.set_d1(b.0, b.1, nm).unwrap();
    }
    for (b, m) in k.d2_blocks() {
        let nm = get((b.0, b.1 + 1)).mul(m).mul(&inverse(&get(b)));
        out.set_d2(b.0, b.1, nm).unwrap();
    }
    out
}

fn random_bases(rng: &mut ChaCha8Rng, k: &DoubleComplex) -> BTreeMap<Bidegree, Matrix> {
    k.support()
        .map(|(b, d)| (b, random_invertible(rng, d)))
        .collect()
}

/// A short exact sequence `0 → A → B → C → 0` in which `B` is a sum of
/// atoms, `A` is spanned by an upward-closed set of atom basis vectors and
/// `C` is the quotient, all three then twisted by random changes of basis.
/// Total dimension of `B` stays at most `max_dim`.
pub fn random_ses(rng: &mut ChaCha8Rng, max_dim: usize) -> (Morphism, Morphism) {
    let mut atoms = Vec::new();
    let mut total = 0;
    loop {
        let a = atom(rng);
        if total + a.total_dim() > max_dim {
            break;
        }
        total += a.total_dim();
        atoms.push(a);
        if rng.gen_bool(0.25) {
            break;
        }
    }
    if atoms.is_empty() {
        atoms.push(dot(0, 0));
    }
    let b = direct_sum(&atoms);

    // per bidegree, which basis vectors of B lie in A
    let mut chosen: BTreeSet<(Bidegree, usize)> = BTreeSet::new();
    for (bd, d) in b.support() {
        for i in 0..d {
            if rng.gen_bool(0.4) {
                chosen.insert((bd, i));
            }
        }
    }
    // close upward under d1 and d2
    loop {
        let mut added = false;
        for &((p, q), i) in chosen.clone().iter() {
            for (target, block) in [((p + 1, q), b.d1(p, q)), ((p, q + 1), b.d2(p, q))] {
                for r in 0..block.rows() {
                    if !block[(r, i)].is_zero() && chosen.insert((target, r)) {
                        added = true;
                    }
                }
            }
        }
        if !added {
            break;
        }
    }
    let select = |bd: Bidegree, inside: bool| -> Vec<usize> {
        (0..b.dim(bd.0, bd.1))
            .filter(|&i| chosen.contains(&(bd, i)) == inside)
            .collect()
    };
    // f: columns e_i for i in A, g: rows e_i for i not in A
    let incl = |bd: Bidegree, inside: bool| -> Matrix {
        let idx = select(bd, inside);
        let mut m = Matrix::zeros(b.dim(bd.0, bd.1), idx.len());
        for (c, &i) in idx.iter().enumerate() {
            m.set_block(i, c, &Matrix::identity(1));
        }
        m
    };
    let restrict = |k: &mut DoubleComplex, inside: bool| {
        for (bd, _) in b.support() {
            let src = incl(bd, inside);
            for (target, block, is_d1) in [
                ((bd.0 + 1, bd.1), b.d1(bd.0, bd.1), true),
                ((bd.0, bd.1 + 1), b.d2(bd.0, bd.1), false),
            ] {
                let dst = incl(target, inside);
                let m = dst.transpose().mul(&block).mul(&src);
                if m.rows() > 0 && m.cols() > 0 {
                    if is_d1 {
                        k.set_d1(bd.0, bd.1, m).unwrap();
                    } else {
                        k.set_d2(bd.0, bd.1, m).unwrap();
                    }
                }
            }
        }
    };
    let mut a = DoubleComplex::new(b.support().map(|(bd, _)| (bd, select(bd, true).len())));
    let mut c = DoubleComplex::new(b.support().map(|(bd, _)| (bd, select(bd, false).len())));
    restrict(&mut a, true);
    restrict(&mut c, false);

    let (ta, tb, tc) = (
        random_bases(rng, &a),
        random_bases(rng, &b),
        random_bases(rng, &c),
    );
    let (a2, b2, c2) = (conjugate(&a, &ta), conjugate(&b, &tb), conjugate(&c, &tc));
    let mut fblocks = Vec::new();
    let mut gblocks = Vec::new();
    for (bd, _) in b.support() {
        let get = |t: &BTreeMap<Bidegree, Matrix>, k: &DoubleComplex| {
            t.get(&bd)
                .cloned()
                .unwrap_or_else(|| Matrix::identity(k.dim(bd.0, bd.1)))
        };
        let (pa, pb, pc) = (get(&ta, &a), get(&tb, &b), get(&tc, &c));
        fblocks.push((bd, pb.mul(&incl(bd, true)).mul(&inverse(&pa))));
        gblocks.push((bd, pc.mul(&incl(bd, false).transpose()).mul(&inverse(&pb))));
    }
    let f = Morphism::new(a2, b2.clone(), fblocks).expect("f is a chain map");
    let g = Morphism::new(b2, c2, gblocks).expect("g is a chain map");
    (f, g)
}

// ---------------------------------------------------------------------------
// random construction expressions

use hodge::hodge::Leaf;
use hodge::ConstructionExpr;

fn random_leaf(rng: &mut ChaCha8Rng) -> Leaf {
    match rng.gen_range(0..6) {
        0 => Leaf::Projective(rng.gen_range(0..5)),
        1 => Leaf::Torus(rng.gen_range(0..4)),
        2 => Leaf::Curve(rng.gen_range(0..4)),
        3 => Leaf::Hopf,
        4 => Leaf::Point,
        _ => {
            let n = rng.gen_range(0..3);
            let mut entries = vec![(0, 0, rng.gen_range(1..3))];
            for _ in 0..rng.gen_range(0..4) {
                let (p, q) = (rng.gen_range(0..=n), rng.gen_range(0..=n));
                if (p, q) != (0, 0) && !entries.iter().any(|e| (e.0, e.1) == (p, q)) {
                    entries.push((p, q, rng.gen_range(1..5)));
                }
            }
            Leaf::diamond(n, entries).unwrap()
        }
    }
}

/// A random, syntactically valid expression (it need not evaluate).
pub fn random_expr(rng: &mut ChaCha8Rng, depth: u32) -> ConstructionExpr {
    if depth == 0 || rng.gen_bool(0.3) {
        return ConstructionExpr::leaf(random_leaf(rng));
    }
    match rng.gen_range(0..4) {
        0 => ConstructionExpr::product(random_expr(rng, depth - 1), random_expr(rng, depth - 1)),
        1 => ConstructionExpr::proj_bundle(random_expr(rng, depth - 1), rng.gen_range(0..4)),
        2 => ConstructionExpr::blow_up(
            random_expr(rng, depth - 1),
            random_expr(rng, depth - 1),
            rng.gen_range(0..4),
        ),
        _ => {
            let parts = (0..rng.gen_range(1..4))
                .map(|_| rng.gen_range(1..3))
                .collect();
            ConstructionExpr::flag_bundle(random_expr(rng, depth - 1), parts)
        }
    }
}

/// Path of a shipped fixture file.
pub fn fixture_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(format!("{name}.json"))
}

// ---------------------------------------------------------------------------
// random complexes

/// A sum of atoms in a randomly twisted basis, total dimension at most
/// `max_dim` (and at least 1).
pub fn random_complex(rng: &mut ChaCha8Rng, max_dim: usize) -> DoubleComplex {
    let mut atoms = vec![dot(rng.gen_range(-1..=1), rng.gen_range(-1..=1))];
    let mut total = 1;
    while rng.gen_bool(0.7) {
        let a = atom(rng);
        if total + a.total_dim() > max_dim {
            break;
        }
        total += a.total_dim();
        atoms.push(a);
    }
    let n = atoms.len();
    atoms.swap(0, rng.gen_range(0..n));
    let k = direct_sum(&atoms);
    let t = random_bases(rng, &k);
    conjugate(&k, &t)
}

/// `(p,p) → (p+1,p)` by ∂₁ and `(p,p) → (p,p+1)` by ∂₂, with σ fixing the
/// corner and swapping the arms.
pub fn real_zigzag_out(p: i32) -> DoubleComplex {
    let one = Matrix::identity(1);
    let mut k = DoubleComplex::new([((p, p), 1), ((p + 1, p), 1), ((p, p + 1), 1)]);
    k.set_d1(p, p, one.clone()).unwrap();
    k.set_d2(p, p, one.clone()).unwrap();
    for b in [(p, p), (p + 1, p), (p, p + 1)] {
        k.set_sigma(b.0, b.1, one.clone()).unwrap();
    }
    k
}

/// `(p+1,p) → (p+1,p+1)` by ∂₂ and `(p,p+1) → (p+1,p+1)` by ∂₁, with σ
/// fixing the corner and swapping the arms.
pub fn real_zigzag_in(p: i32) -> DoubleComplex {
    let one = Matrix::identity(1);
    let mut k = DoubleComplex::new([((p + 1, p), 1), ((p, p + 1), 1), ((p + 1, p + 1), 1)]);
    k.set_d2(p + 1, p, one.clone()).unwrap();
    k.set_d1(p, p + 1, one.clone()).unwrap();
    for b in [(p + 1, p), (p, p + 1), (p + 1, p + 1)] {
        k.set_sigma(b.0, b.1, one.clone()).unwrap();
    }
    k
}

/// A random complex with real structure built from self-conjugate pieces.
pub fn random_real_complex(rng: &mut ChaCha8Rng) -> DoubleComplex {
    use hodge::constructions::{leray_hirsch_model, ConjugatePairing};
    let mut parts = Vec::new();
    for _ in 0..rng.gen_range(1..=4) {
        let i = rng.gen_range(0..=1);
        parts.push(match rng.gen_range(0..5) {
            0 => dot(i, i),
            1 => square(i, i),
            2 => real_zigzag_out(i),
            3 => real_zigzag_in(i),
            _ => {
                let (a, b) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
                leray_hirsch_model(
                    &dot(0, 0),
                    &[(a, b), (b, a)],
                    &ConjugatePairing::standard(1, 2),
                )
                .or_else(|_| {
                    leray_hirsch_model(&dot(0, 0), &[(a, a)], &ConjugatePairing::all_fixed(1))
                })
                .unwrap()
            }
        });
    }
    direct_sum(&parts)
}
