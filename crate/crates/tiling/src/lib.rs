//! Tiling-theoretic chromatic parameters, exact fractional clique-tiling
//! linear programs with Farkas certificates, exact H-tiling search, and
//! extremal multipartite constructions.
//!
//! Everything ratio-valued is computed in exact rational arithmetic
//! ([`num_rational::BigRational`]); there is no floating point anywhere in
//! the solving paths.

pub mod constructions;
pub mod exact;
pub mod fractional;
pub mod graph;
pub mod harness;
pub mod params;
pub mod rational;
pub mod simplex;

pub use graph::{BlockStructure, Graph, MultipartiteGraph};
pub use params::ChromaticProfile;

/// Crate-wide rational type.
pub type Rational = num_rational::BigRational;

/// Build a rational from an integer pair.
pub fn ratio(num: i64, den: i64) -> Rational {
    use num_bigint::BigInt;
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn int(n: i64) -> Rational {
    ratio(n, 1)
}
