//! Exact invariant theory for linear symplectic quotients of torus representations.
//!
//! The crate is `no_std` and needs only `alloc`. It covers integer lattice
//! algorithms, polynomial arithmetic and Gröbner bases over the Gaussian
//! rationals, weight-matrix analysis (type detection, faithfulness, the
//! reduction of Type II_k matrices to circle actions), invariant generators
//! and relations, Poisson brackets, Hilbert-series truncations, and
//! verification of candidate graded maps between quotient presentations.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod invariants;
pub mod lattice;
pub mod morphisms;
pub mod poly;
pub mod series;
pub mod weights;

pub use error::{Error, Result};
pub use lattice::IntMatrix;
