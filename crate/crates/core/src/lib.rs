//! Spin-1/2 frame algebra and singlet correlation simulator.
//!
//! - [`su2`]: spinors `|n,±⟩`, SU(2) rotations, overlaps and ray equivalence.
//! - [`correlation`]: closed-form singlet tables and the Bell/Wigner evaluators.
//! - [`samplers`]: seeded Monte Carlo for the singlet law, a hidden-vector
//!   local model, deterministic strategies and the sealed-envelope example.
//! - [`verify`]: the exact-value check suite.

pub mod correlation;
pub mod error;
pub mod samplers;
pub mod su2;
pub mod verify;

pub use error::{Error, Result};
