//! Local computation algorithms built from neighborhood-dependent online
//! graph algorithms, with the tooling to check their behavior empirically.
//!
//! The pieces, bottom up:
//!
//! * [`graph`]: immutable CSR graphs, generators, the query-counting oracle
//!   and the implicit line graph used for edge problems;
//! * [`ordering`]: hash-based rankings and the combinatorics of legal paths;
//! * [`vicinity`]: relevant- and containing-vicinity exploration;
//! * [`engine`]: greedy online algorithms, the two LCA constructions and the
//!   global run they must agree with;
//! * [`analysis`]: exact dominance checks and Monte Carlo experiments.

pub mod analysis;
pub mod engine;
pub mod error;
pub mod exact;
pub mod graph;
pub mod ordering;
pub mod par;
pub mod stats;
pub mod vicinity;

pub use error::{Error, Result};
