//! Circumscribed spheres of triangles, tetrahedra and simplices.
//!
//! Three independent algorithms are implemented and cross-checked:
//!
//! * the standard vector formula for a triangle in E³,
//! * the linear-system method for a full simplex in `E^n` (with the closed
//!   Cramer form for tetrahedra),
//! * the projective method, which intersects edge-bisector hyperplanes with
//!   the simplex's own hyperplane through the extended cross product in
//!   homogeneous coordinates.
//!
//! Spheres carry `r²`; the square root is only taken by [`Sphere::radius`].
//!
//! ```
//! use circumsphere::{circumsphere3_projective, Triangle3, Vec3};
//!
//! let t = Triangle3::new(
//!     Vec3::new([1.0, 0.0, 0.0]),
//!     Vec3::new([0.0, 1.0, 0.0]),
//!     Vec3::new([0.0, 0.0, 0.0]),
//! );
//! let s = circumsphere3_projective(&t).unwrap();
//! assert!((s.radius_sq - 0.5).abs() < 1e-15);
//! ```

// `!(x > t)` is used on purpose so that NaN falls on the rejecting side
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod circumsphere3;
pub mod error;
pub mod linalg;
pub mod nd;
pub mod oracle;
pub mod sphere;

pub use circumsphere3::{
    bisector_plane, circumcenter3_homogeneous, circumsphere3_projective, circumsphere3_standard,
    circumsphere_tetrahedron_closed, homogeneous_normalize_center, simplex_metrics, support_plane, SimplexMetrics,
    Tetrahedron3, Triangle3, DEGENERACY_RATIO,
};
pub use error::{GeometryError, Result};
pub use linalg::{cross3, cross4, cross_nd, det, solve, Coords, HomPlane, HomPoint, SquareMatrix, Vec3, VecN, Vector};
pub use nd::{
    build_hyperplanes, circumsphere_facet_projective, circumsphere_simplex_linear, facet_center_homogeneous,
    HyperplaneSet, SimplexN,
};
pub use oracle::{
    cayley_menger_residual, constrained_lsq_reference, equidistance_residual, triangle_circumradius_oracle,
    verify_vertices, ResidualReport,
};
pub use sphere::Sphere;
