//! Sphere-of-influence graphs and a mechanical checker for the `14.5 n`
//! edge bound on closed sphere-of-influence graphs.
//!
//! - [`bounds`]: the annulus angle bound `Φ_d(r, R)` and pair/capacity bounds.
//! - [`arrangements`]: minimum angle sums over circular arrangements.
//! - [`proofcheck`]: the case analysis as a checkable script.
//! - [`geometry`]: point sets, SIG construction and the weighted digraph.

pub mod arrangements;
pub mod bounds;
pub mod geometry;
pub mod proofcheck;
