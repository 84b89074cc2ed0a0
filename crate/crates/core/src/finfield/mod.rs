//! Finite fields F_p and F_{p^k}, dense matrices, and the echelon
//! machinery used by every other module.

mod echelon;
mod field;
mod matrix;
mod sparse;

pub use echelon::{Echelon, QuotientMap};
pub use field::{is_prime, ExtScalar, Field, Fp, FpScalar};
pub use matrix::Matrix;
pub use sparse::{sparse_from_terms, SparseEchelon, SparseRow};
