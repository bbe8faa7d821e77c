//! Exact linear algebra over the Gaussian rationals ℚ(i).

mod elimination;
mod matrix;
mod scalar;

pub use elimination::{
    column_space_basis, coordinates_in_span, echelon, extend_basis, intersection_basis,
    kernel_basis, rank, solve, subspace_dims, Echelon, Quotient, SubspaceDims,
};
pub use matrix::Matrix;
pub use scalar::Scalar;
