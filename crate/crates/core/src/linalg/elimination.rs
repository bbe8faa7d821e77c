//! Exact Gaussian elimination and the subspace operations built on it.

use num_traits::{One, Zero};

use super::{Matrix, Scalar};
use crate::error::LinalgError;

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

/// Gauss-Jordan elimination. The pivot in each column is the first
/// nonzero entry at or below the current row.
pub fn echelon(m: &Matrix) -> Echelon {
    let (rows, cols) = m.shape();
    let mut a: Vec<Vec<Scalar>> = m.to_rows();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, pr);
        let inv = a[r][c].inv().expect("pivot is nonzero");
        if !inv.is_one() {
            for x in a[r][c..].iter_mut() {
                *x *= &inv;
            }
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !p.is_zero() {
                    *x -= &(&factor * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let reduced = Matrix::from_vec(rows, cols, a.into_iter().flatten().collect());
    Echelon { reduced, pivots }
}

/// Dimension of the column span.
pub fn rank(m: &Matrix) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    echelon(m).pivots.len()
}

/// Columns form a basis of the null space of `m`.
pub fn kernel_basis(m: &Matrix) -> Matrix {
    let n = m.cols();
    let Echelon { reduced, pivots } = echelon(m);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Matrix::zeros(n, free.len());
    for (k, &f) in free.iter().enumerate() {
        basis[(f, k)] = Scalar::one();
        for (row, &pc) in pivots.iter().enumerate() {
            basis[(pc, k)] = -&reduced[(row, f)];
        }
    }
    basis
}

/// The columns of `m` that form a basis of its column span (the pivot
/// columns, in their original order).
pub fn column_space_basis(m: &Matrix) -> Matrix {
    if m.cols() == 0 {
        return m.clone();
    }
    m.select_columns(&echelon(m).pivots)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubspaceDims {
    pub dim_u: usize,
    pub dim_v: usize,
    pub dim_sum: usize,
    pub dim_intersection: usize,
}

/// Dimensions of the column spans of `u`, `v`, their sum and their
/// intersection, all in the same ambient space.
pub fn subspace_dims(u: &Matrix, v: &Matrix) -> Result<SubspaceDims, LinalgError> {
    if u.rows() != v.rows() {
        return Err(LinalgError::AmbientMismatch {
            expected: u.rows(),
            found: v.rows(),
        });
    }
    let dim_u = rank(u);
    let dim_v = rank(v);
    let dim_sum = rank(&u.hcat(v));
    Ok(SubspaceDims {
        dim_u,
        dim_v,
        dim_sum,
        dim_intersection: dim_u + dim_v - dim_sum,
    })
}

/// Solves `basis · X = rhs` column by column. `None` if some column of
/// `rhs` is outside the span. When `basis` has dependent columns the free
/// coordinates are set to zero.
pub fn solve(basis: &Matrix, rhs: &Matrix) -> Result<Option<Matrix>, LinalgError> {
    if basis.rows() != rhs.rows() {
        return Err(LinalgError::AmbientMismatch {
            expected: basis.rows(),
            found: rhs.rows(),
        });
    }
    let n = basis.cols();
    if rhs.cols() == 0 {
        return Ok(Some(Matrix::zeros(n, 0)));
    }
    let Echelon { reduced, pivots } = echelon(&basis.hcat(rhs));
    if pivots.iter().any(|&c| c >= n) {
        return Ok(None);
    }
    let mut out = Matrix::zeros(n, rhs.cols());
    for (row, &pc) in pivots.iter().enumerate() {
        for j in 0..rhs.cols() {
            out[(pc, j)] = reduced[(row, n + j)].clone();
        }
    }
    Ok(Some(out))
}

/// Coordinates `c` with `basis · c = v`, or `None` when `v` is not in the
/// column span.
pub fn coordinates_in_span(
    v: &[Scalar],
    basis: &Matrix,
) -> Result<Option<Vec<Scalar>>, LinalgError> {
    Ok(solve(basis, &Matrix::column_vector(v))?.map(|c| c.column(0)))
}

/// Basis of the intersection of the column spans of `u` and `v`.
pub fn intersection_basis(u: &Matrix, v: &Matrix) -> Result<Matrix, LinalgError> {
    if u.rows() != v.rows() {
        return Err(LinalgError::AmbientMismatch {
            expected: u.rows(),
            found: v.rows(),
        });
    }
    let k = kernel_basis(&u.hcat(&v.neg()));
    let top = k.select_rows(0, u.cols());
    Ok(column_space_basis(&u.mul(&top)))
}

/// Columns of `candidates` that extend the independent columns of `base`
/// to a basis of `span(base) + span(candidates)`.
pub fn extend_basis(base: &Matrix, candidates: &Matrix) -> Matrix {
    let joined = base.hcat(candidates);
    let picked: Vec<usize> = echelon(&joined)
        .pivots
        .into_iter()
        .filter(|&c| c >= base.cols())
        .map(|c| c - base.cols())
        .collect();
    candidates.select_columns(&picked)
}

/// A subquotient `numerator / denominator` realised by representatives:
/// a basis of the denominator extended by `reps` to a basis of the
/// numerator.
#[derive(Debug, Clone)]
pub struct Quotient {
    denominator: Matrix,
    reps: Matrix,
}

impl Quotient {
    /// Both arguments are spanning sets (columns) in one ambient space; the
    /// denominator span must lie inside the numerator span.
    pub fn new(numerator: &Matrix, denominator: &Matrix) -> Result<Self, LinalgError> {
        let dims = subspace_dims(numerator, denominator)?;
        assert_eq!(
            dims.dim_sum, dims.dim_u,
            "quotient denominator is not contained in the numerator"
        );
        let denominator = column_space_basis(denominator);
        let reps = extend_basis(&denominator, numerator);
        Ok(Self { denominator, reps })
    }

    pub fn dim(&self) -> usize {
        self.reps.cols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.reps.rows()
    }

    /// Representative vectors, one column per class.
    pub fn reps(&self) -> &Matrix {
        &self.reps
    }

    pub fn denominator(&self) -> &Matrix {
        &self.denominator
    }

    /// Coordinates of the classes of the columns of `vectors` in the basis
    /// given by `reps`; `None` if some column is outside the numerator.
    pub fn classes_of(&self, vectors: &Matrix) -> Option<Matrix> {
        let full = self.denominator.hcat(&self.reps);
        let coords = solve(&full, vectors).expect("ambient dimensions agree")?;
        Some(coords.select_rows(self.denominator.cols(), self.reps.cols()))
    }
}
