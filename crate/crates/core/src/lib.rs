//! Lattice path matroids: construction from boundary paths, closed-form
//! structure (loops, parallel pairs, the Western coline, quite simple
//! colines), and nowhere-zero coflow certificates for orientations given by
//! rational representations.
//!
//! ```
//! use lpmkit::{structure, transversal::StrongLpm};
//!
//! let m = StrongLpm::parse("EENENN", "NNENEE").unwrap();
//! let qsc = structure::quite_simple_coline(&m).unwrap();
//! assert_eq!(qsc.coline.to_vec(), vec![1]);
//! ```

pub mod cli;
pub mod lattice;
pub mod lattice_path;
pub mod matroid;
pub mod orient;
pub mod rational;
pub mod set;
pub mod structure;
pub mod transversal;

pub use lattice_path::{LatticePath, PathPair};
pub use matroid::RankOracle;
pub use set::ElementSet;
pub use transversal::StrongLpm;
