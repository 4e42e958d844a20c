//! Exact enumeration of 2-SAT functions, literal posets and red/blue colored
//! graphs, with the cross-checks that tie them together.
//!
//! * [`boolfn`]: formulas, truth tables, spine, associated pairs, elementarity.
//! * [`litposet`]: strict orders on literals, covers, the formula/poset maps.
//! * [`cgraph`]: colored graphs, OBTF and blue-bipartite tests, deletion
//!   distances, triangle-components, and the posets of a graph.
//! * [`census`]: counting engines with checksummed records and a cache.
//! * [`verify`]: the identity and property suites.
//!
//! The `parallel` feature (on by default) runs the census sweeps on rayon.

pub mod boolfn;
pub mod census;
pub mod cgraph;
mod error;
pub mod litposet;
pub mod par;
pub mod text;
pub mod verify;

pub use error::{Error, Result};
