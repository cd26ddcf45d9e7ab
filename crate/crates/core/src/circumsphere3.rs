//! Circumscribed spheres in E³.
//!
//! Three independent routes are provided for triangles and tetrahedra:
//!
//! * [`circumsphere3_standard`]: the textbook vector formula with the
//!   triangle translated so that `C` is at the origin.
//! * [`circumsphere3_projective`]: the center as the intersection of the two
//!   edge-bisector planes and the triangle's own plane, computed with the
//!   4D extended cross product in homogeneous coordinates.
//! * [`circumsphere_tetrahedron_closed`]: Cramer's rule written out for the
//!   3×3 system of a tetrahedron, with the `1/(12 D)` volume factor.
//!
//! Degeneracy is tested on scale-free Gram ratios so that the decision does
//! not depend on the units of the input.

use crate::error::{GeometryError, Result};
use crate::linalg::{cross4_raw, Coords, HomPlane, HomPoint, SquareMatrix, Vec3, Vector};
use crate::sphere::Sphere;

/// Gram ratio at or below which a triangle or tetrahedron is rejected.
pub const DEGENERACY_RATIO: f64 = 1e-12;

/// Triangle `A, B, C` in E³.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Triangle3 {
    pub vertices: [Vec3; 3],
}

impl Triangle3 {
    pub fn new(a: Vec3, b: Vec3, c: Vec3) -> Self {
        Self { vertices: [a, b, c] }
    }

    /// Builds a triangle from raw coordinates, rejecting non-finite values.
    pub fn try_from_arrays(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> Result<Self> {
        Ok(Self::new(Vec3::try_new(a)?, Vec3::try_new(b)?, Vec3::try_new(c)?))
    }

    pub fn a(&self) -> Vec3 {
        self.vertices[0]
    }

    pub fn b(&self) -> Vec3 {
        self.vertices[1]
    }

    pub fn c(&self) -> Vec3 {
        self.vertices[2]
    }

    /// Edge vectors `a = A − C` and `b = B − C`.
    #[inline]
    pub fn edges(&self) -> (Vec3, Vec3) {
        let [a, b, c] = self.vertices;
        (a - c, b - c)
    }

    /// `‖a×b‖² / (‖a‖²‖b‖²)`, the squared sine of the angle at `C`.
    pub fn conditioning(&self) -> f64 {
        let (a, b) = self.edges();
        a.cross(&b).norm_sq() / (a.norm_sq() * b.norm_sq())
    }

    pub fn permuted(&self, order: [usize; 3]) -> Self {
        Self {
            vertices: order.map(|i| self.vertices[i]),
        }
    }
}

/// Tetrahedron `V0..V3` in E³.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tetrahedron3 {
    pub vertices: [Vec3; 4],
}

impl Tetrahedron3 {
    pub fn new(v0: Vec3, v1: Vec3, v2: Vec3, v3: Vec3) -> Self {
        Self {
            vertices: [v0, v1, v2, v3],
        }
    }

    pub fn try_from_arrays(v: [[f64; 3]; 4]) -> Result<Self> {
        Ok(Self {
            vertices: [
                Vec3::try_new(v[0])?,
                Vec3::try_new(v[1])?,
                Vec3::try_new(v[2])?,
                Vec3::try_new(v[3])?,
            ],
        })
    }

    /// Edge vectors `X_i = V_i − V0`.
    pub fn edges(&self) -> [Vec3; 3] {
        let v0 = self.vertices[0];
        [self.vertices[1] - v0, self.vertices[2] - v0, self.vertices[3] - v0]
    }

    /// Signed volume `det[X1; X2; X3] / 6`.
    pub fn volume(&self) -> f64 {
        let [x1, x2, x3] = self.edges();
        triple(x1, x2, x3) / 6.0
    }
}

/// Edge lengths from `V0` and the signed volume of a simplex.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplexMetrics {
    /// `‖V_i − V0‖²` for `i ≥ 1`.
    pub edge_lengths_sq: Vec<f64>,
    /// Signed volume `det(X)/n!` when the vertices form a full simplex
    /// (`n + 1` vertices in `E^n`), otherwise `None`.
    pub volume: Option<f64>,
}

/// Squared edge lengths from `V0` and, for a full simplex, its signed volume.
pub fn simplex_metrics<V: Coords>(vertices: &[V]) -> SimplexMetrics {
    let Some((v0, rest)) = vertices.split_first() else {
        return SimplexMetrics {
            edge_lengths_sq: Vec::new(),
            volume: None,
        };
    };
    let v0 = v0.as_slice();
    let edge_lengths_sq = rest.iter().map(|v| v.dist_sq_to(v0)).collect();
    let dim = v0.len();
    let volume = (rest.len() == dim).then(|| {
        let rows: Vec<Vec<f64>> = rest
            .iter()
            .map(|v| v.as_slice().iter().zip(v0).map(|(a, b)| a - b).collect())
            .collect();
        let factorial: f64 = (1..=dim).map(|k| k as f64).product();
        SquareMatrix::from_rows(&rows)
            .map(|m| m.determinant() / factorial)
            .unwrap_or(f64::NAN)
    });
    SimplexMetrics {
        edge_lengths_sq,
        volume,
    }
}

#[inline]
fn triple(x1: Vec3, x2: Vec3, x3: Vec3) -> f64 {
    crate::linalg::matrix::det3(x1.0, x2.0, x3.0)
}

#[inline]
fn check_triangle(cross_sq: f64, a_sq: f64, b_sq: f64) -> Result<()> {
    if cross_sq > DEGENERACY_RATIO * (a_sq * b_sq) {
        Ok(())
    } else {
        Err(GeometryError::DegenerateTriangle {
            cross_norm_sq: cross_sq,
        })
    }
}

/// Circumsphere of a triangle by the standard vector formula.
///
/// With `a = A − C`, `b = B − C`:
/// `Q = C + ((‖a‖² b − ‖b‖² a) × (a × b)) / (2‖a × b‖²)` and
/// `r² = ‖a‖²‖b‖²‖a − b‖² / (4‖a × b‖²)`.
pub fn circumsphere3_standard(t: &Triangle3) -> Result<Sphere> {
    let (a, b) = t.edges();
    let axb = a.cross(&b);
    let cross_sq = axb.norm_sq();
    let a_sq = a.norm_sq();
    let b_sq = b.norm_sq();
    check_triangle(cross_sq, a_sq, b_sq)?;

    let inv = 0.5 / cross_sq;
    let offset = (b * a_sq - a * b_sq).cross(&axb) * inv;
    let radius_sq = a_sq * b_sq * (a - b).norm_sq() * (0.5 * inv);
    Ok(Sphere::new(t.c() + offset, radius_sq))
}

#[inline]
fn bisector(edge: Vec3, edge_sq: f64) -> HomPlane {
    HomPlane::new(edge, -0.5 * edge_sq)
}

/// Plane bisecting `edge` orthogonally, `[edge : −(edge·edge)/2]`.
///
/// The edge is taken relative to the shared vertex translated to the origin,
/// so the plane passes through `edge / 2`.
pub fn bisector_plane(edge: Vec3) -> Result<HomPlane> {
    let edge_sq = edge.norm_sq();
    if !(edge_sq > 0.0) {
        return Err(GeometryError::DegenerateTriangle { cross_norm_sq: 0.0 });
    }
    Ok(bisector(edge, edge_sq))
}

/// The triangle's supporting plane `[a × b : 0]` through the origin.
pub fn support_plane(a: Vec3, b: Vec3) -> Result<HomPlane> {
    let n = a.cross(&b);
    check_triangle(n.norm_sq(), a.norm_sq(), b.norm_sq())?;
    Ok(HomPlane::new(n, 0.0))
}

/// Homogeneous circumcenter `Q′` relative to `C`, together with `‖a×b‖²`.
///
/// The planes enter the cross product as `ρ_B, ρ_A, ρ_0`; with the cofactor
/// sign convention of [`cross4_raw`] this orientation yields
/// `q′_w = +‖a × b‖²`.
#[inline(always)]
fn projective_parts(t: &Triangle3) -> Result<(HomPoint, f64)> {
    let (a, b) = t.edges();
    let normal = a.cross(&b);
    let cross_sq = normal.norm_sq();
    let a_sq = a.norm_sq();
    let b_sq = b.norm_sq();
    check_triangle(cross_sq, a_sq, b_sq)?;

    let rho_a = bisector(a, a_sq);
    let rho_b = bisector(b, b_sq);
    let rho_0 = HomPlane::new(normal, 0.0);
    let q = cross4_raw(rho_b.to_array(), rho_a.to_array(), rho_0.to_array());
    Ok((HomPoint::from_array(q), cross_sq))
}

/// Homogeneous intersection point `Q′` of the bisector planes and the support
/// plane, expressed relative to vertex `C`.
pub fn circumcenter3_homogeneous(t: &Triangle3) -> Result<HomPoint> {
    projective_parts(t).map(|(q, _)| q)
}

/// Converts a homogeneous offset `Q′` from `origin` into a Euclidean sphere:
/// `Q = origin + q′_xyz / q′_w`, `r² = ‖q′_xyz‖² / q′_w²`.
pub fn homogeneous_normalize_center(q: &HomPoint, origin: Vec3, threshold: f64) -> Result<Sphere> {
    let offset = q
        .to_euclidean(threshold)
        .ok_or(GeometryError::DegenerateTriangle { cross_norm_sq: q.w })?;
    Ok(Sphere::new(origin + offset, offset.norm_sq()))
}

/// Circumsphere of a triangle as the intersection of three planes.
///
/// The two planes bisecting the edges `a`, `b` and the triangle's own plane
/// are intersected with the 4D extended cross product; the homogeneous
/// result is normalised back to a Euclidean center.
pub fn circumsphere3_projective(t: &Triangle3) -> Result<Sphere> {
    let (q, cross_sq) = projective_parts(t)?;
    debug_assert!(
        (q.w - cross_sq).abs() <= 1e-10 * cross_sq,
        "q'_w = {} differs from |a x b|^2 = {}",
        q.w,
        cross_sq
    );
    // same arithmetic as `homogeneous_normalize_center`, kept inline for the hot path
    if !(q.w.abs() > 0.0) {
        return Err(GeometryError::DegenerateTriangle { cross_norm_sq: q.w });
    }
    let offset = q.coords.scale(1.0 / q.w);
    Ok(Sphere::new(t.c() + offset, offset.norm_sq()))
}

/// Circumsphere of a tetrahedron by the closed-form cofactor expressions.
///
/// With `X_i = V_i − V0`, `L_i = ‖X_i‖²` and signed volume
/// `D = det[X1; X2; X3] / 6`, each center coordinate is
/// `V0 + (±cofactors · L) / (12 D)`.
pub fn circumsphere_tetrahedron_closed(t: &Tetrahedron3) -> Result<Sphere> {
    let [x1, x2, x3] = t.edges();
    let (l1, l2, l3) = (x1.norm_sq(), x2.norm_sq(), x3.norm_sq());
    let det = triple(x1, x2, x3);
    if !(det * det > DEGENERACY_RATIO * (l1 * l2 * l3)) {
        return Err(GeometryError::DegenerateSimplex { measure: det / 6.0 });
    }
    let d = det / 6.0;
    let [xa, ya, za] = x1.0;
    let [xb, yb, zb] = x2.0;
    let [xc, yc, zc] = x3.0;

    let inv = 1.0 / (12.0 * d);
    let ox = ((yb * zc - yc * zb) * l1 - (ya * zc - yc * za) * l2 + (ya * zb - yb * za) * l3) * inv;
    let oy = (-(xb * zc - xc * zb) * l1 + (xa * zc - xc * za) * l2 - (xa * zb - xb * za) * l3) * inv;
    let oz = ((xb * yc - xc * yb) * l1 - (xa * yc - xc * ya) * l2 + (xa * yb - xb * ya) * l3) * inv;
    let offset = Vector([ox, oy, oz]);
    Ok(Sphere::new(t.vertices[0] + offset, offset.norm_sq()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn v(x: f64, y: f64, z: f64) -> Vec3 {
        Vec3::new([x, y, z])
    }

    fn right() -> Triangle3 {
        Triangle3::new(v(1.0, 0.0, 0.0), v(0.0, 1.0, 0.0), v(0.0, 0.0, 0.0))
    }

    fn equilateral() -> Triangle3 {
        Triangle3::new(v(0.0, 0.0, 0.0), v(1.0, 0.0, 0.0), v(0.5, 3f64.sqrt() / 2.0, 0.0))
    }

    fn corner() -> Tetrahedron3 {
        Tetrahedron3::new(v(0.0, 0.0, 0.0), v(1.0, 0.0, 0.0), v(0.0, 1.0, 0.0), v(0.0, 0.0, 1.0))
    }

    fn regular_tetrahedron() -> Tetrahedron3 {
        // edge length 1
        let h = (2.0f64 / 3.0).sqrt();
        Tetrahedron3::new(
            v(0.0, 0.0, 0.0),
            v(1.0, 0.0, 0.0),
            v(0.5, 3f64.sqrt() / 2.0, 0.0),
            v(0.5, 3f64.sqrt() / 6.0, h),
        )
    }

    #[test]
    fn standard_and_projective_known_triangles() {
        type Method = fn(&Triangle3) -> Result<Sphere>;
        for method in [circumsphere3_standard as Method, circumsphere3_projective] {
            let s = method(&right()).unwrap();
            assert_relative_eq!(s.center.0.as_slice(), [0.5, 0.5, 0.0].as_slice(), epsilon = 1e-15);
            assert_relative_eq!(s.radius_sq, 0.5, epsilon = 1e-15);

            let s = method(&equilateral()).unwrap();
            assert_relative_eq!(s.center.x(), 0.5, epsilon = 1e-15);
            assert_relative_eq!(s.center.y(), 3f64.sqrt() / 6.0, epsilon = 1e-15);
            assert_relative_eq!(s.radius_sq, 1.0 / 3.0, epsilon = 1e-15);

            let collinear = Triangle3::new(v(0.0, 0.0, 0.0), v(1.0, 1.0, 1.0), v(2.0, 2.0, 2.0));
            assert!(matches!(
                method(&collinear),
                Err(GeometryError::DegenerateTriangle { .. })
            ));

            let coincident = Triangle3::new(v(1.0, 1.0, 1.0), v(1.0, 1.0, 1.0), v(0.0, 0.0, 0.0));
            assert!(matches!(
                method(&coincident),
                Err(GeometryError::DegenerateTriangle { .. })
            ));
        }
    }

    #[test]
    fn bisector_plane_examples() {
        assert_eq!(
            bisector_plane(v(1.0, 0.0, 0.0)).unwrap().to_array(),
            [1.0, 0.0, 0.0, -0.5]
        );
        assert_eq!(
            bisector_plane(v(0.0, 2.0, 0.0)).unwrap().to_array(),
            [0.0, 2.0, 0.0, -2.0]
        );
        assert!(bisector_plane(Vec3::zero()).is_err());
        let e = v(0.75, -1.25, 3.5);
        assert_eq!(bisector_plane(e).unwrap().eval(&(e * 0.5).0), 0.0);
    }

    #[test]
    fn support_plane_examples() {
        let p = support_plane(v(1.0, 0.0, 0.0), v(0.0, 1.0, 0.0)).unwrap();
        assert_eq!(p.to_array(), [0.0, 0.0, 1.0, 0.0]);
        let (a, b) = (v(0.3, -2.0, 1.0), v(1.5, 0.5, -0.25));
        let p = support_plane(a, b).unwrap();
        assert!(p.eval(&a.0).abs() < 1e-15);
        assert!(p.eval(&b.0).abs() < 1e-15);
        assert!(matches!(
            support_plane(v(1.0, 2.0, 3.0), v(2.0, 4.0, 6.0)),
            Err(GeometryError::DegenerateTriangle { .. })
        ));
    }

    #[test]
    fn homogeneous_weight_equals_cross_norm() {
        let q = circumcenter3_homogeneous(&right()).unwrap();
        assert_eq!(q.w, 1.0);
        let t = Triangle3::new(v(0.2, 1.0, -0.4), v(-1.0, 0.3, 0.9), v(0.5, 0.5, 0.1));
        let (a, b) = t.edges();
        let q = circumcenter3_homogeneous(&t).unwrap();
        assert_relative_eq!(q.w, a.cross(&b).norm_sq(), max_relative = 1e-14);
    }

    #[test]
    fn projective_center_lies_on_all_three_planes() {
        let t = Triangle3::new(v(0.2, 1.0, -0.4), v(-1.0, 0.3, 0.9), v(0.5, 0.5, 0.1));
        let (a, b) = t.edges();
        let q = circumcenter3_homogeneous(&t).unwrap();
        for plane in [
            bisector_plane(a).unwrap(),
            bisector_plane(b).unwrap(),
            support_plane(a, b).unwrap(),
        ] {
            assert!(plane.dot_point(&q).abs() < 1e-14);
        }
    }

    #[test]
    fn normalize_rejects_points_at_infinity() {
        let q = HomPoint::new(v(1.0, 0.0, 0.0), 0.0);
        assert!(homogeneous_normalize_center(&q, Vec3::zero(), 0.0).is_err());
        let q = HomPoint::new(v(2.0, 0.0, 0.0), 2.0);
        let s = homogeneous_normalize_center(&q, v(1.0, 1.0, 1.0), 0.0).unwrap();
        assert_eq!(s.center, v(2.0, 1.0, 1.0));
        assert_eq!(s.radius_sq, 1.0);
    }

    #[test]
    fn tetrahedron_examples() {
        let s = circumsphere_tetrahedron_closed(&corner()).unwrap();
        assert_relative_eq!(s.center.0.as_slice(), [0.5, 0.5, 0.5].as_slice(), epsilon = 1e-14);
        assert_relative_eq!(s.radius_sq, 0.75, epsilon = 1e-14);

        let s = circumsphere_tetrahedron_closed(&regular_tetrahedron()).unwrap();
        assert_relative_eq!(s.radius_sq, 3.0 / 8.0, max_relative = 1e-14);

        let flat = Tetrahedron3::new(v(0.0, 0.0, 0.0), v(1.0, 0.0, 0.0), v(0.0, 1.0, 0.0), v(1.0, 1.0, 0.0));
        assert!(matches!(
            circumsphere_tetrahedron_closed(&flat),
            Err(GeometryError::DegenerateSimplex { .. })
        ));
    }

    #[test]
    fn metrics_examples() {
        let m = simplex_metrics(&corner().vertices);
        assert_eq!(m.edge_lengths_sq, vec![1.0, 1.0, 1.0]);
        assert_relative_eq!(m.volume.unwrap(), 1.0 / 6.0, epsilon = 1e-16);
        assert_relative_eq!(corner().volume(), 1.0 / 6.0, epsilon = 1e-16);

        let shift = v(3.0, -2.0, 7.0);
        let moved = corner().vertices.map(|p| p + shift);
        let mm = simplex_metrics(&moved);
        assert_eq!(mm.edge_lengths_sq, m.edge_lengths_sq);
        assert_relative_eq!(mm.volume.unwrap(), m.volume.unwrap(), epsilon = 1e-15);

        let r = simplex_metrics(&regular_tetrahedron().vertices);
        assert_relative_eq!(r.volume.unwrap(), 2f64.sqrt() / 12.0, max_relative = 1e-14);

        assert_eq!(simplex_metrics(&right().vertices).volume, None);
    }
}
