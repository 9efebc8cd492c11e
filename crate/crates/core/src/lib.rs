//! Patterns in the Markov tree.
//!
//! Exact big-integer machinery for Markov triplets `{x, R, z}` with
//! `x² + R² + z² = 3xRz`: tree navigation, the Lucas-sequence edge
//! functions, the Pell equation satisfied by edge region numbers,
//! last-digit repeat cycles, the special sum-of-two-squares terms, and the
//! Farey-tree indexing of regions.
//!
//! Heavy sweeps (Pell brute force, last-digit statistics) run on rayon when
//! the `parallel` feature is enabled and fall back to a sequential loop
//! otherwise; see [`ExecMode`].

pub mod cycles;
pub mod edge;
mod error;
pub mod export;
pub mod farey;
pub mod lucas;
pub mod markov_tree;
mod parallel;
pub mod pell;
pub mod squares;

pub use edge::{EdgeSide, RegionHead};
pub use error::{Budget, Error, Result};
pub use markov_tree::{MarkovList, OrderedTriplet};
pub use parallel::ExecMode;
