//! Certified entanglement bounds for two-colorable graph states.
//!
//! Given only the expectation values `a_i = tr(rho K_i)` of the `n` stabilizer
//! generators of a graph state, this crate computes lower and upper bounds on
//! the minimal global robustness and relative entropy of entanglement that are
//! consistent with the data. Every bound is a closed form evaluated in `O(n)`,
//! so it applies to graphs with thousands of vertices.
//!
//! The explicit graph-diagonal state model ([`state`]) and the brute-force
//! checks in [`oracle`] exist to verify the closed forms at small `n`.

pub mod bounds;
pub mod error;
pub mod graph;
pub mod io;
pub mod noise;
pub mod oracle;
pub mod state;
pub mod sweep;

pub use bounds::{report, BoundsReport};
pub use error::{Error, Result};
pub use graph::{Graph, StabilizerGenerator, TwoColoring};
pub use noise::DephasingParams;
pub use state::{GraphDiagonalState, MeasurementRecord};
