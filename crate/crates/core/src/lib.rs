//! Exact arithmetic for colored multiset Eulerian polynomials.
//!
//! The crate constructs descent polynomials of colored multiset permutations
//! (by direct enumeration and by the Ehrhart/h* transform), verifies the
//! multivariate barred-permutation identities at finite truncation, and
//! certifies distributional properties — symmetry, real-rootedness,
//! interlacing, gamma-positivity, symmetric decompositions — with exact
//! rational arithmetic throughout. No floating point is used anywhere.

pub mod analysis;
pub mod combinatorics;
pub mod error;
pub mod eulerian;
pub mod identity;
pub mod jsonio;
pub mod limits;
pub mod numeric;
pub mod poly;
pub mod s_eulerian;
pub mod series;
pub mod trees;

pub use error::CmeError;
pub use limits::Limits;
pub use poly::{IntPoly, Poly, RatPoly};

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, CmeError>;
