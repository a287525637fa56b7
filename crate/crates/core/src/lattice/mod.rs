//! Exact integer linear algebra and Hilbert bases of kernel monoids.

mod hilbert;
mod matrix;

pub use hilbert::{is_minimal_generating_set, monoid_hilbert_basis, ExponentVector};
pub use matrix::{gcd_lcm, IntMatrix};
