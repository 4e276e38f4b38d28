//! Finite-dimensional reference computations.
//!
//! Everything here produces ground truth by brute force: explicit matrix
//! representations of operator words, and dense diagonalization of small
//! spin lattices. The [`spin`] module deliberately bypasses the symbolic
//! algebra layer so that its numbers constitute an independent check on the
//! relaxation pipeline rather than a restatement of it.

pub mod pauli;
pub mod spin;
pub mod bell;

pub use pauli::MatrixRep;
pub use spin::{GroundData, Lattice};
