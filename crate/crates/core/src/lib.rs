//! Combinatorial models of low-dimensional cobordism categories, classifying-space
//! invariants of finite categories, and invertible field theories, all in exact arithmetic.

pub mod cob1;
pub mod cob2;
pub mod exactmath;
pub mod fincat;
pub mod localize;
pub mod monoidal;
pub mod nerve;
