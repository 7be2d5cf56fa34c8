//! One-dimensional cobordisms: abstract matchings and planar slice diagrams.

mod matching;
mod planar;
mod restricted;

use thiserror::Error;

pub use matching::{
    act_boundary, compose_abstract, euler_functor_1d, triviality_witness, Matching1D, Matching1DJson,
};
pub use planar::{
    cancel_zigzag, commute_events, compose_planar, f_invariant, functor_to_d, insert_zigzag, is_red_gap,
    red_gap_count, reduce_endomorphism, DImage, PlanarDiagram, PlanarDiagramJson, Slice, SweepReport,
};
pub use restricted::RestrictedMorphism;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Cob1Error {
    #[error("boundary of odd size {0}")]
    OddBoundary(usize),
    #[error("invalid matching: {0}")]
    BadMatching(String),
    #[error("interface mismatch: {left} outgoing points vs {right} incoming")]
    InterfaceMismatch { left: usize, right: usize },
    #[error("not a permutation of the incoming points")]
    BadPermutation,
    #[error("event {slice} at position {position} is invalid with {strands} strands")]
    BadSlice { position: usize, slice: String, strands: usize },
    #[error("expected an endomorphism of the empty manifold, got {m} -> {n}")]
    NonEmptyBoundary { m: usize, n: usize },
    #[error("json: {0}")]
    Json(String),
}
