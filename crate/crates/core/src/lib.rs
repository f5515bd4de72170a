//! Exact symbolic analysis of plane algebraic curves.
//!
//! The crate locates and classifies simple singularities of curves given by
//! polynomial equations over quadratic-extension towers of Q, enumerates
//! flex and conical-flex points, and decides (2,3)-torus structure of
//! sextics, with every computation either exact or certified by rigorous
//! interval enclosures.

pub mod field;
pub mod num;
pub mod poly;
