//! Computational toolkit for tame symplectic automorphism groups of K3
//! surfaces: the Mathieu character, ADE root lattices and their
//! discriminant groups, the exhaustive search over quotient singularity
//! configurations, a small permutation-group engine, and affine algebra
//! over F2 in dimension four.

pub mod ade;
pub mod data;
pub mod enumerate;
pub mod error;
pub mod f2;
pub mod mathieu;
pub mod perm;

pub use error::{Error, Result};

/// Exact rational number used for all character arithmetic.
pub type Rational = num_rational::Ratio<i128>;
