//! Exact Macaulay inverse systems.
//!
//! The crate computes dual modules of polynomial ideals under the contraction
//! and derivation actions of a polynomial ring on its divided-power dual, with
//! everything done over exact rationals:
//!
//! - [`poly`]: sparse multivariate polynomials, weighted degrees and the two actions;
//! - [`linalg`]: fraction-free exact linear algebra and univariate helpers;
//! - [`semigroup`]: numerical semigroups and the explicit duals of monomial curves;
//! - [`duality`]: graded dual components, Hilbert functions, annihilators and membership;
//! - [`gadmissible`]: G-admissible generator sequences and divisibility probes;
//! - [`points`]: zero-dimensional Gorenstein schemes and reducedness certificates.

pub mod duality;
pub mod error;
pub mod gadmissible;
pub mod linalg;
pub mod points;
pub mod poly;
pub mod semigroup;

pub use error::{Error, Result};

/// Exact rational scalar used throughout.
pub type Q = num_rational::BigRational;

/// Default cap on graded enumeration, in weighted-degree units.
pub const DEFAULT_DEGREE_CAP: u64 = 200;

/// Global cap on graded enumeration.
///
/// Reads `MACDUAL_MAX_DEGREE` from the environment, falling back to
/// [`DEFAULT_DEGREE_CAP`] when unset or unparsable.
pub fn degree_cap() -> u64 {
    std::env::var("MACDUAL_MAX_DEGREE")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_DEGREE_CAP)
}
