//! Schur complexes of bounded complexes of free modules over polynomial rings.
//!
//! The crate is organized bottom-up:
//!
//! - [`ring`]: exact coefficients (rationals, prime fields), sparse multivariate
//!   polynomials, polynomial matrices and their ranks.
//! - [`complex`]: bounded complexes of free modules, their odd/even basis
//!   labelling and pointwise homology.
//! - [`tableau`]: partitions, Z/2-graded tableaux, the product and coproduct
//!   on the graded exterior algebra, and the straightening algorithm.
//! - [`schur`]: assembly of the Schur complex on the standard-tableau basis.
//! - [`io`]: the JSON file formats shared with the command-line tool.

pub mod complex;
pub mod error;
pub mod io;
pub mod ring;
pub mod schur;
pub mod tableau;

pub use complex::{FreeComplex, ParityBasis, Violation};
pub use error::{Error, Result};
pub use ring::{CoefficientField, PolyMatrix, Polynomial, Ring};
pub use schur::{exterior_power, schur_complex, symmetric_power, SchurBasis, SchurComplex};
pub use tableau::{straighten, Partition, Tableau};
