//! Exact ranks over the rationals and prime fields, and reduced homology.

mod complex;
mod field;
mod matrix;

pub use complex::{BettiVector, SimplicialComplex};
pub use field::{parse_fields, Field};
pub use matrix::SparseMatrix;
