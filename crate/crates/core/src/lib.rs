//! Exact computation of the Ising partition-function polynomials of simple
//! graphs.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: immutable simple graphs and vertex subsets.
//! * [`algebra`]: big rationals, sparse multivariate polynomials, quadratic
//!   extensions, Gaussian rationals and Lagrange interpolation.
//! * [`ising`]: brute-force subset enumeration, the ground truth for
//!   everything else.
//! * [`gadgets`]: the graph transformations used by the reductions.
//! * [`closed_forms`]: exact evaluators for the gadget identities.
//! * [`cwdp`]: k-expressions and the clique-width dynamic program.
//! * [`reduction`]: interpolation pipelines, polynomial-time special cases
//!   and max-cut extraction.
//! * [`verify`]: identity suites that cross-check closed forms against brute
//!   force, used by the CLI.

pub mod algebra;
pub mod closed_forms;
pub mod cwdp;
pub mod error;
pub mod gadgets;
pub mod graph;
pub mod ising;
pub mod reduction;
pub mod verify;

pub use algebra::{GaussRat, Poly, QuadExt, Rat};
pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
