//! Convex polytope kernel for the plane and 3-space.

mod body;
pub mod exact;
mod hull;
mod isometry;
mod matrix;
mod parallelogram;
mod vector;

pub use body::{ConvexBody, Facet};
pub use hull::{convex_hull, Hull, HullFacet, FACET_MERGE_ANGLE, HULL_REL_EPS};
pub use isometry::Isometry;
pub use matrix::Matrix;
pub use parallelogram::{min_enclosing_parallelogram, EnclosingParallelogram};
pub use vector::Vector;

/// Predicate tolerance for containment and contact decisions.
pub const EPS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeomError {
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("singular linear map")]
    Singular,
    #[error("body is not centrally symmetric")]
    NotSymmetric,
    #[error("apex lies in the base plane")]
    ApexInBasePlane,
    #[error("segment is parallel to the base plane")]
    SegmentParallel,
    #[error("linear part is not orthogonal")]
    NotOrthogonal,
}
