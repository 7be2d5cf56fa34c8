//! Exact integer and rational linear algebra plus finitely presented groups.

mod abelian;
mod field;
mod lattice;
mod matrix;
mod presentation;
mod snf;
mod union_find;

pub use abelian::{AbelianInvariants, AbelianQuotient};
pub use field::{Field, FieldMatrix};
pub use lattice::HermiteLattice;
pub use matrix::IntMatrix;
pub use presentation::{cyclic_reduce, free_reduce, inverse_word, parse_word, GroupPresentation, Letter, Word};
pub use snf::{smith_diagonal, smith_diagonal_with_right, smith_normal_form, SmithForm};
pub use union_find::UnionFind;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MathError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cannot parse `{0}` as a field element")]
    Parse(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
}
