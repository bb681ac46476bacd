//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("zero vector cannot be normalized")]
    ZeroVector,
    #[error("polynomial division left a remainder")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("the zero polynomial has no vanishing order")]
    ZeroPolynomial,
    #[error("invalid polynomial text: {0}")]
    PolyParse(String),
    #[error("point set is not full-dimensional")]
    NotFullDimensional,
    #[error("feasible region is empty or unbounded")]
    UnboundedOrEmpty,
    #[error("inequality {0} does not support a facet")]
    RedundantInequality(usize),
    #[error("point is not strictly interior")]
    NotInterior,
    #[error("index out of range: {0}")]
    IndexRange(String),
    #[error("pivot must name a non-homogenizing variable with nonzero coefficient")]
    InvalidPivot,
    #[error("form is not a facet hyperplane of the polytope")]
    NotFacetForm,
    #[error("facets do not meet in a codimension-2 face")]
    NonIncidentFacets,
    #[error("numerator vanishes identically on the facet")]
    NumeratorVanishes,
    #[error("interpolation kernel has dimension {0}, expected 1")]
    KernelDimension(usize),
    #[error("adjoint routes disagree")]
    RouteDisagreement,
    #[error("projective map sends the polytope across the hyperplane at infinity")]
    VertexAtInfinity,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
