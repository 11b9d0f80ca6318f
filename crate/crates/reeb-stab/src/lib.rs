//! Computable K-semistability obstructions for affine cones polarized by a
//! Reeb vector field.
//!
//! The pipeline: build the exact multigraded Hilbert series of the coordinate
//! ring, specialize it along a Reeb vector into the index character, expand
//! near `t = 0` to read off the volume coefficients `a_0, a_1` and their
//! directional derivatives, and from those evaluate Donaldson-Futaki
//! invariants of product and Rees test configurations. A projected-Newton
//! minimizer locates the volume-minimizing Reeb vector on the Gorenstein
//! cross-section, and an oracle module provides independent checks (power
//! series expansion, partial character sums, finite differences, rational
//! approximation).

pub mod cli;
pub mod cone;
pub mod error;
pub mod hilbert;
pub mod jet;
pub mod laurent;
pub mod model;
pub mod oracle;
pub mod scalar;
pub mod stability;
pub mod volmin;

pub use error::{Error, Result};
pub use scalar::{Mode, Scalar};
