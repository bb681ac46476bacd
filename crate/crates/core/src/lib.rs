//! Exact computation of adjoint polynomials of rational convex polytopes.
//!
//! Everything runs over arbitrary-precision rationals: convex hulls and vertex
//! enumeration by brute-force subset search, the matroid of the facet
//! hyperplane arrangement, adjoint polynomials by two independent routes
//! (a triangulation of the polar dual, and interpolation through the residual
//! arrangement points), and the residue recursion of the associated canonical
//! form. Intended for small instances where exactness matters more than speed.

pub mod adjoint;
pub mod arrangement;
pub mod error;
pub mod linalg;
pub mod poly;
pub mod polytope;
pub mod residue;

pub use error::{Error, Result};
pub use linalg::{QMatrix, Rat};
