//! Exact simulation of realtime affine finite automata (AfAs) and affine
//! counter automata (AfCAs) over arbitrary-precision rationals.
//!
//! An affine state is a real vector whose entries sum to 1 (entries may be
//! negative); affine transition matrices have columns summing to 1. The final
//! measurement normalizes absolute values in the l1 norm. Everything here is
//! computed with exact rational arithmetic, so probability claims such as
//! "accepted with probability 1" can be certified rather than approximated.
//!
//! The crate ships:
//! - [`linalg`]: affine vectors/matrices and the weighting operator,
//! - [`afa`]: realtime AfA semantics plus Las Vegas and restart modes,
//! - [`afca`]: affine k-counter automata over sparse configuration vectors,
//! - [`zoo`]: the END, PAL-NPAL and MANYTWINS constructions,
//! - [`oracle`]: naive brute-force language/promise deciders,
//! - [`format`]: a line-oriented machine definition file format,
//! - [`sweep`]: exhaustive machine-vs-oracle comparison reports.
//!
//! See the `examples/` directory for runnable tours of each capability, and
//! the `afsim` binary for the command-line front end.

pub mod afa;
pub mod afca;
pub mod error;
pub mod format;
pub mod linalg;
pub mod oracle;
pub mod rational;
pub mod sweep;
pub mod tape;
pub mod zoo;

pub use error::Error;
pub use rational::Rational;
