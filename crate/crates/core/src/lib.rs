//! Discrepancy bounds for digit-based point sets from Walsh and b-adic exponential sums.
//!
//! The crate is `no_std` and needs only `alloc`. It provides
//!
//! * exact base-b digit arithmetic and the Monna map ([`badic`]),
//! * Walsh and b-adic function systems and their hybrid products ([`systems`]),
//!   evaluated as exact rational phases ([`phase`]),
//! * elementary intervals and their Fourier coefficients ([`elint`]),
//! * the weights, error terms and discrepancy bounds ([`bounds`]),
//! * van der Corput, Halton and generator-matrix sequences ([`sequences`]),
//! * an exact brute-force discrepancy oracle ([`oracle`]).
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod badic;
pub mod bounds;
pub mod elint;
pub mod error;
pub mod oracle;
pub mod phase;
pub mod sequences;
pub mod systems;

pub use badic::{Base, DigitVector, ExactFraction};
pub use bounds::{etk_bound, BoundOptions, BoundReport, Variant};
pub use error::{Error, Result};
pub use oracle::{domination_check, OracleCaps};
pub use phase::PhaseFraction;
pub use sequences::{PointSet, SequenceConfig};
pub use systems::{HybridSystemSpec, SystemTag};
