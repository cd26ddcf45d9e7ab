//! Circumscribed hyperspheres in `E^n`.
//!
//! [`circumsphere_simplex_linear`] handles a full simplex of `n + 1` points by
//! solving the `n × n` system obtained from subtracting the squared distance
//! equations. [`circumsphere_facet_projective`] handles `n` points spanning a
//! hyperplane: the center is the intersection of `n − 1` edge bisectors with
//! the points' own hyperplane, found with the extended cross product in
//! `n + 1` homogeneous coordinates.

use crate::circumsphere3::DEGENERACY_RATIO;
use crate::error::{GeometryError, Result};
use crate::linalg::{cross_nd, solve, Coords, HomPlane, HomPoint, SquareMatrix, VecN};
use crate::sphere::Sphere;

/// Ordered vertices `V0..V(k-1)` of a simplex in `E^n`, `2 ≤ k ≤ n + 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplexN {
    vertices: Vec<VecN>,
}

impl SimplexN {
    pub fn new(vertices: Vec<VecN>) -> Result<Self> {
        let dim = vertices.first().map(VecN::len).unwrap_or(0);
        if vertices.len() < 2 || vertices.len() > dim + 1 {
            return Err(GeometryError::VertexCount {
                expected: dim + 1,
                actual: vertices.len(),
                dim,
            });
        }
        for v in &vertices {
            if v.len() != dim {
                return Err(GeometryError::DimensionMismatch {
                    expected: dim,
                    actual: v.len(),
                });
            }
            if let Some(index) = v.as_slice().iter().position(|c| !c.is_finite()) {
                return Err(GeometryError::NonFinite { index });
            }
        }
        Ok(Self { vertices })
    }

    /// Convenience constructor from coordinate rows.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let vertices = rows
            .iter()
            .map(|r| VecN::new(r.as_ref().to_vec()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(vertices)
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].len()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[VecN] {
        &self.vertices
    }

    /// Edge vectors `V_i − V0` for `i ≥ 1`.
    pub fn edges(&self) -> Vec<VecN> {
        let v0 = &self.vertices[0];
        self.vertices[1..].iter().map(|v| v.sub(v0)).collect()
    }

    fn expect_count(&self, expected: usize) -> Result<()> {
        if self.len() == expected {
            Ok(())
        } else {
            Err(GeometryError::VertexCount {
                expected,
                actual: self.len(),
                dim: self.dim(),
            })
        }
    }
}

/// Bisector hyperplanes `ρ_1..ρ_{n−1}` followed by the support hyperplane `ρ_0`,
/// all relative to `V0` at the origin.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperplaneSet {
    pub planes: Vec<HomPlane<VecN>>,
}

impl HyperplaneSet {
    pub fn bisectors(&self) -> &[HomPlane<VecN>] {
        &self.planes[..self.planes.len() - 1]
    }

    pub fn support(&self) -> &HomPlane<VecN> {
        self.planes.last().expect("hyperplane set is never empty")
    }

    fn homogeneous_rows(&self) -> Vec<VecN> {
        self.planes.iter().map(HomPlane::to_homogeneous).collect()
    }
}

/// Circumsphere of a full simplex (`n + 1` points in `E^n`).
///
/// Solves `M (Q − V0) = b` where row `i` of `M` is `2 (V_i − V0)` and
/// `b_i = ‖V_i − V0‖²`.
pub fn circumsphere_simplex_linear(s: &SimplexN) -> Result<Sphere<VecN>> {
    let n = s.dim();
    s.expect_count(n + 1)?;
    let edges = s.edges();
    let mut entries = Vec::with_capacity(n * n);
    for e in &edges {
        entries.extend(e.as_slice().iter().map(|c| 2.0 * c));
    }
    let rhs: Vec<f64> = edges.iter().map(VecN::norm_sq).collect();
    let m = SquareMatrix::from_row_major(n, entries);
    let offset = solve(&m, &rhs).map_err(|e| match e {
        GeometryError::SingularSystem { pivot } => GeometryError::DegenerateSimplex { measure: pivot },
        other => other,
    })?;
    let radius_sq = offset.norm_sq();
    if !(offset.is_finite() && radius_sq.is_finite()) {
        return Err(GeometryError::DegenerateSimplex { measure: 0.0 });
    }
    Ok(Sphere::new(s.vertices[0].add(&offset), radius_sq))
}

/// Product of squared edge lengths, the scale of the Gram determinant.
fn edge_scale(edges: &[VecN]) -> f64 {
    edges.iter().map(VecN::norm_sq).product()
}

/// Builds the bisector and support hyperplanes for `n` points in `E^n`.
///
/// The support normal is the generalized cross product of the `n − 1` edge
/// vectors; its sign follows the cofactor expansion. Dependent edges are
/// rejected when `‖normal‖² / ∏‖e_i‖²` falls to the degeneracy ratio.
pub fn build_hyperplanes(s: &SimplexN) -> Result<HyperplaneSet> {
    let n = s.dim();
    s.expect_count(n)?;
    let edges = s.edges();
    let normal = cross_nd(&edges)?;
    let gram = normal.norm_sq();
    if !(gram > DEGENERACY_RATIO * edge_scale(&edges)) {
        return Err(GeometryError::DegenerateSimplex { measure: gram });
    }
    let mut planes: Vec<HomPlane<VecN>> = edges
        .into_iter()
        .map(|e| {
            let d = -0.5 * e.norm_sq();
            HomPlane::new(e, d)
        })
        .collect();
    planes.push(HomPlane::new(normal, 0.0));
    Ok(HyperplaneSet { planes })
}

/// Homogeneous intersection `Q′ = ρ_1 × … × ρ_{n−1} × ρ_0`, relative to `V0`.
pub fn facet_center_homogeneous(s: &SimplexN) -> Result<HomPoint<VecN>> {
    let planes = build_hyperplanes(s)?;
    Ok(HomPoint::from_homogeneous(cross_nd(&planes.homogeneous_rows())?))
}

/// Circumsphere of `n` points in `E^n` with its center in their affine hull.
pub fn circumsphere_facet_projective(s: &SimplexN) -> Result<Sphere<VecN>> {
    let q = facet_center_homogeneous(s)?;
    let threshold = DEGENERACY_RATIO * edge_scale(&s.edges());
    let offset = q
        .to_euclidean(threshold)
        .ok_or(GeometryError::DegenerateSimplex { measure: q.w })?;
    let radius_sq = offset.norm_sq();
    if !(offset.is_finite() && radius_sq.is_finite()) {
        return Err(GeometryError::DegenerateSimplex { measure: q.w });
    }
    Ok(Sphere::new(s.vertices[0].add(&offset), radius_sq))
}
