use thiserror::Error;

/// Errors produced anywhere in the invariant pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("degree {degree} out of range for complex of dimension {dim}")]
    DegreeOutOfRange { degree: isize, dim: usize },

    #[error("vertex map is not simplicial: image of {simplex:?} is not a simplex of `{codomain}`")]
    InvalidMap {
        simplex: Vec<usize>,
        codomain: String,
    },

    #[error("matrix of size {size} is singular")]
    Singular { size: usize },

    #[error("complex `{0}` is not orientable: orientation propagation reached a contradiction")]
    NonOrientable(String),

    #[error("complex `{name}` is not closed: face {face:?} lies in {count} facets")]
    NotClosed {
        name: String,
        face: Vec<usize>,
        count: usize,
    },

    #[error("duality map D_{degree} of `{name}` is singular; not a rational homology manifold")]
    DualityDegenerate { name: String, degree: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("not a chain map: fails to commute with the boundary in degree {degree}")]
    NotChainMap { degree: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
