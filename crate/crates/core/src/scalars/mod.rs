//! Exact scalar fields and dense linear algebra.

pub mod factor;
mod field;
mod matrix;
pub mod mpoly;
pub mod upoly;

pub use field::{binomial, is_prime, Field, PrimeField, Rationals};
pub use matrix::{kernel_basis, rref, row_space, span_contains, Matrix, RowSpace};
pub use mpoly::{MPoly, RatField, RatFunc};
pub use upoly::{factor, matrix_minimal_polynomial, minimal_polynomial, squarefree_decomposition, UPoly};
