//! Exact-arithmetic toolkit for cubical homology and the orientation /
//! co-orientation sign calculus of fiber products of transverse linear maps.
//!
//! Everything here computes over arbitrary-precision integers and rationals;
//! there is no floating point anywhere in the crate.

pub mod chain;
pub mod complex;
pub mod io;
pub mod linalg;
pub mod orient;
pub mod products;

pub use linalg::{IntMatrix, SnfResult};
