use thiserror::Error;

/// Errors produced by the linear algebra and circumsphere routines.
#[derive(Clone, Debug, Error, PartialEq)]
pub enum GeometryError {
    /// Operands do not have the dimension the operation requires.
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch {
        /// Required dimension or count
        expected: usize,
        /// Dimension or count that was supplied
        actual: usize,
    },

    /// Wrong number of vertices for the requested construction.
    #[error("expected {expected} vertices in dimension {dim}, got {actual}")]
    VertexCount {
        /// Required number of vertices
        expected: usize,
        /// Number of vertices supplied
        actual: usize,
        /// Ambient dimension
        dim: usize,
    },

    /// A coordinate was NaN or infinite.
    #[error("non-finite coordinate at index {index}")]
    NonFinite {
        /// Position of the offending component
        index: usize,
    },

    /// Vectors must have at least two components.
    #[error("vector dimension {0} is below the minimum of 2")]
    DimensionTooSmall(usize),

    /// The triangle's edge vectors are (nearly) parallel or zero.
    #[error("degenerate triangle: |a x b|^2 = {cross_norm_sq:e}")]
    DegenerateTriangle {
        /// Squared norm of the edge cross product
        cross_norm_sq: f64,
    },

    /// The simplex is (nearly) flat, so no unique circumsphere exists.
    #[error("degenerate simplex: measure = {measure:e}")]
    DegenerateSimplex {
        /// Volume, determinant or homogeneous weight that fell below threshold
        measure: f64,
    },

    /// Gaussian elimination met a pivot below the singularity threshold.
    #[error("singular system: pivot = {pivot:e}")]
    SingularSystem {
        /// Magnitude of the rejected pivot
        pivot: f64,
    },
}

impl GeometryError {
    /// `true` for errors caused by degenerate geometry rather than bad usage.
    pub fn is_degenerate(&self) -> bool {
        matches!(
            self,
            Self::DegenerateTriangle { .. } | Self::DegenerateSimplex { .. } | Self::SingularSystem { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, GeometryError>;
