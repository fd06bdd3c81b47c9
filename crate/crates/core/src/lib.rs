//! Solvers for the discretizable molecular distance geometry problem.
//!
//! An instance places vertices `1..=n` in `R^K` so that every vertex past the
//! first `K` has distances to its `K` immediate predecessors. Each such vertex
//! then has two candidate positions, and the remaining ("pruning") distances
//! decide which combinations survive.
//!
//! Two solvers are provided:
//!
//! - [`bp::bp_solve`], a depth-first Branch-and-Prune over the binary tree of
//!   candidate positions;
//! - [`sbbu::sbbu_solve`], which builds one realization greedily and repairs
//!   it pruning edge by pruning edge with compositions of partial reflections.
//!
//! Instances come from [`genio`]: random chains with known ground truth, PDB
//! backbones, or the plain text format.

pub mod bp;
pub mod cli;
pub mod genio;
pub mod geometry;
pub mod instance;
pub mod sbbu;

pub use cli::mde;
pub use geometry::{Point, Realization};
pub use instance::{DmdgpInstance, Edge};
