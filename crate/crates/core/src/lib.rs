//! Filtered finite-difference schemes for first-order Hamilton–Jacobi
//! equations, with the benchmark problems and refinement-study tooling used
//! to measure their convergence.
//!
//! A filtered step blends a monotone step `S^M` and a high-order step `S^A`:
//!
//! ```text
//! S^F(u) = S^M(u) + eps * tau * F((S^A(u) - S^M(u)) / (eps * tau))
//! ```
//!
//! with a bounded filter `F`, so the result stays within `eps * tau` of the
//! monotone scheme while reproducing `S^A` wherever the two agree closely.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod hamiltonians;
pub mod mesh;
pub mod problems;
pub mod schemes;

pub use error::{Error, Result};
