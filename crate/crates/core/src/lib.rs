//! Exact computations in the ring of D4 triality invariants.
//!
//! The crate covers truncated q-series for the classical modular objects,
//! W(D4)-invariant polynomials, the bigraded invariant ring with its cusp
//! classification, the two normal forms of the associated elliptic curve, an
//! exact enumerator for invariants of fixed weight and degree, and the
//! correspondence with joint covariants of a binary quadratic and a binary cubic.

pub mod covariants;
pub mod curve;
pub mod enumerator;
pub mod error;
pub mod invariant;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod series;
pub mod series_poly;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
pub use rational::Rational;
pub use series::FracSeries;
