//! Exact coefficient arithmetic, sparse multivariate polynomials and
//! polynomial matrices.

mod extension;
mod field;
mod matrix;
mod poly;

pub use field::{CoefficientField, Scalar};
pub use matrix::{scalar_rank, PolyMatrix, DEFAULT_SEED, DEFAULT_TRIALS, SPECIALIZATION_RANGE};
pub use poly::{Monomial, Polynomial, Ring};
