//! Exact-arithmetic invariants of Raynaud-type vector bundles on curves.
//!
//! The library computes, with no floating point anywhere in a computation
//! path, the numerical invariants (rank, degree, slope) of the bundles
//! S_{mu,R,m} and their duals, the exponent thresholds that make the
//! semistability detection work, and the base-point bounds for |R.Theta|
//! on the moduli spaces U_X(r, r(g-1)). Every closed form is cross-checked
//! against an independent exact-sequence oracle built on the additive
//! symmetric-power recurrence and Riemann-Roch.

pub mod bounds;
pub mod error;
pub mod exact;
pub mod general;
pub mod oracle;
pub mod table;
pub mod theta;

pub use error::{Error, Result};
pub use general::{BundleInvariants, SlopeSpec};
