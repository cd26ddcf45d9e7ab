//! Dense linear algebra primitives: vectors, cross products, determinants,
//! the extended cross product and a pivoted solver.

pub mod homogeneous;
pub mod matrix;
pub mod vector;

pub use homogeneous::{cross4, cross4_raw, cross_nd, dot4, HomPlane, HomPoint};
pub use matrix::{det, residual_norm, solve, SquareMatrix, SINGULAR_PIVOT_RATIO};
pub use vector::{cross3, dot, Coords, Vec3, VecN, Vector};
