//! Exact cohomological computations for configuration spaces of marked
//! hyperelliptic curves.
//!
//! Everything in this crate happens over the rationals with arbitrary
//! precision: there are no floats, no tolerances, and no randomized results.
//! The main layers, bottom to top:
//!
//! * [`linalg`] — dense rational matrices with deterministic row reduction,
//!   kernel extraction, stacking and Kronecker products.
//! * [`surface`] — the cohomology ring of a genus-`g` surface and of its
//!   `n`-fold product, including the solved diagonal class.
//! * [`totaro`] — the second page of the Leray spectral sequence for the
//!   inclusion of the ordered configuration space into the product, with its
//!   differential and normal-form arithmetic.
//! * [`symplectic`] — the integral symplectic matrices generated by the
//!   hyperelliptic mapping class group and fixed-space solvers on the spaces
//!   above.
//! * [`boundary`] — the atlas of boundary divisor labels on the compactified
//!   moduli space, with canonicalization and ambient pullbacks.
//! * [`certificate`] — a replayable elimination certificate showing the
//!   divisor classes are linearly independent, plus its checker.
//! * [`oracle`] — independent brute-force cross-checks used by the test
//!   suite and `selftest`.
//! * [`selftest`] — the acceptance checks shared by `cargo test` and the
//!   CLI `selftest` subcommand.
//!
//! With the default `parallel` feature the hot loops fan out through rayon;
//! results are bit-identical to the sequential fallback because every
//! parallel region computes independent rows/columns that are merged in a
//! fixed order.

pub mod anchors;
pub mod boundary;
pub mod certificate;
mod error;
pub mod linalg;
pub mod oracle;
pub mod par;
pub mod selftest;
pub mod surface;
pub mod symplectic;
pub mod totaro;

pub use error::{Error, Result};
pub use linalg::{Rat, RatMatrix};
