//! Skeletal Picard groupoids and 1-dimensional field theories valued in vector spaces.

mod frobenius;
mod picard;

use thiserror::Error;

use crate::exactmath::MathError;

pub use frobenius::{
    evaluate_restricted, extend_to_full, EulerTheory, Extension, FrobeniusDatum, FullEvaluator, TheoryEvaluator,
};
pub use picard::{cob1_picard_data, field_units, picard_equivalent, Cob1PicardDerivation, CyclicSum, PicardData};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonoidalError {
    #[error("invalid Picard data: {0}")]
    InvalidPicard(String),
    #[error("pairing must be a symmetric square matrix")]
    NotSymmetric,
    #[error("search space of {0} candidates exceeds the bound {1}")]
    SearchBound(u128, u128),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error(transparent)]
    Math(#[from] MathError),
    #[error("json: {0}")]
    Json(String),
}
