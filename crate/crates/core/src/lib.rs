//! Reductions, verifiers and brute-force solvers for unit-disk
//! separation problems.

pub mod arrangements;
pub mod error;
pub mod gadgets;
pub mod geometry;
pub mod graphs;
pub mod gridembed;
pub mod pipeline;
pub mod scalar;
pub mod solvers;

pub use error::{Error, Result};
pub use scalar::Rational;

/// Exact rational point.
pub type RPoint = geometry::Point2<scalar::Rational>;
/// Exact rational disk.
pub type RDisk = geometry::Disk<scalar::Rational>;
