//! Independent correctness oracles for circumspheres.
//!
//! None of these routines share an evaluation path with the methods they
//! check: equidistance is measured directly against the vertices, the
//! Cayley–Menger test works only from pairwise distances, the triangle
//! oracle uses side lengths and Kahan's area formula, and the least-squares
//! reference solves the Gram system of the edge basis.

use crate::circumsphere3::{
    circumsphere3_projective, circumsphere3_standard, circumsphere_tetrahedron_closed, Tetrahedron3, Triangle3,
    DEGENERACY_RATIO,
};
use crate::error::{GeometryError, Result};
use crate::linalg::{det, solve, Coords, SquareMatrix, Vec3, VecN};
use crate::nd::{circumsphere_facet_projective, circumsphere_simplex_linear, SimplexN};
use crate::sphere::Sphere;

/// Default acceptance threshold for every residual in a [`ResidualReport`].
pub const RESIDUAL_TOLERANCE: f64 = 1e-8;

const FLAT_CAYLEY_MENGER_RATIO: f64 = 1e-14;

/// Worst-case residuals of all applicable methods on one input.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ResidualReport {
    /// `max |‖Q − V_i‖² − r²| / r²` over methods and vertices.
    pub max_equidistance_rel: f64,
    /// Cayley–Menger residual; only for tetrahedra in E³.
    pub cayley_menger_rel: Option<f64>,
    /// Largest relative `r²` deviation of any method from the reference oracle.
    pub oracle_radius_rel_err: f64,
    /// Distance of the center from the vertices' affine hull, relative to `r`.
    pub center_hull_residual: f64,
    /// Number of methods that were evaluated.
    pub methods: usize,
}

impl ResidualReport {
    pub fn worst(&self) -> f64 {
        self.max_equidistance_rel
            .max(self.cayley_menger_rel.unwrap_or(0.0))
            .max(self.oracle_radius_rel_err)
            .max(self.center_hull_residual)
    }

    pub fn passes(&self, tolerance: f64) -> bool {
        self.worst() <= tolerance
    }
}

/// `max_i |‖Q − V_i‖² − r²| / max(r², f64::MIN_POSITIVE)`.
pub fn equidistance_residual<V: Coords, P: Coords>(s: &Sphere<V>, vertices: &[P]) -> f64 {
    let denom = s.radius_sq.max(f64::MIN_POSITIVE);
    vertices
        .iter()
        .map(|v| (s.center.dist_sq_to(v.as_slice()) - s.radius_sq).abs() / denom)
        .fold(0.0, f64::max)
}

fn cayley_menger_matrix(tet: &Tetrahedron3, r_sq: f64) -> SquareMatrix {
    let v = &tet.vertices;
    let l = |i: usize, j: usize| v[i].dist_sq_to(v[j].as_slice());
    let entries = vec![
        0.0,
        1.0,
        1.0,
        1.0,
        1.0,
        1.0, //
        1.0,
        0.0,
        l(1, 0),
        l(2, 0),
        l(3, 0),
        r_sq, //
        1.0,
        l(1, 0),
        0.0,
        l(2, 1),
        l(3, 1),
        r_sq, //
        1.0,
        l(2, 0),
        l(2, 1),
        0.0,
        l(3, 2),
        r_sq, //
        1.0,
        l(3, 0),
        l(3, 1),
        l(3, 2),
        0.0,
        r_sq, //
        1.0,
        r_sq,
        r_sq,
        r_sq,
        r_sq,
        0.0,
    ];
    SquareMatrix::from_row_major(6, entries)
}

/// Bordered Cayley–Menger determinant of the four vertices and the center.
///
/// The 6×6 determinant vanishes exactly when `r_sq` is the squared
/// circumradius. Expanding along its border gives
/// `det M(r²) = det M(0) − 2 r² · CM`, with `CM` the 5×5 Cayley–Menger
/// determinant of the vertices (the leading block of `M(0)`). Evaluating that
/// form avoids cancelling `r⁴`-sized terms when the radius is large. The
/// result is normalised by `det M(0)`, so it equals `|r_sq / r₀² − 1|` in exact
/// arithmetic: scale free, and directly comparable to a relative radius error.
///
/// Returns `f64::INFINITY` for a flat tetrahedron, where the normaliser
/// vanishes relative to the product of its row max-norms.
pub fn cayley_menger_residual(tet: &Tetrahedron3, r_sq: f64) -> f64 {
    let zero = cayley_menger_matrix(tet, 0.0);
    let at_zero = det(&zero);
    let row_scale: f64 = (0..6)
        .map(|i| zero.row(i).iter().fold(0.0, |m: f64, e| m.max(e.abs())))
        .product();
    if !(at_zero.abs() > FLAT_CAYLEY_MENGER_RATIO * row_scale) {
        return f64::INFINITY;
    }
    let block: Vec<f64> = (0..5).flat_map(|i| zero.row(i)[..5].to_vec()).collect();
    let cm = det(&SquareMatrix::from_row_major(5, block));
    ((at_zero - 2.0 * r_sq * cm) / at_zero).abs()
}

/// Classical `r² = a²b²c² / (16 K²)` from side lengths, with the area from
/// Kahan's stable form of Heron's formula. Sides are sorted first, so the
/// result is exactly invariant under vertex permutation.
pub fn triangle_circumradius_oracle(t: &Triangle3) -> Result<f64> {
    let [p, q, r] = t.vertices;
    let mut sq = [
        p.dist_sq_to(q.as_slice()),
        q.dist_sq_to(r.as_slice()),
        r.dist_sq_to(p.as_slice()),
    ];
    sq.sort_by(|x, y| y.total_cmp(x));
    let [a, b, c] = sq.map(f64::sqrt);
    let sixteen_k_sq = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
    if !(sixteen_k_sq > 0.0) {
        return Err(GeometryError::DegenerateTriangle {
            cross_norm_sq: (sixteen_k_sq / 4.0).max(0.0),
        });
    }
    Ok(sq[0] * sq[1] * sq[2] / sixteen_k_sq)
}

fn gram_system(vertices: &[VecN]) -> (Vec<VecN>, SquareMatrix) {
    let v0 = &vertices[0];
    let edges: Vec<VecN> = vertices[1..].iter().map(|v| v.sub(v0)).collect();
    let k = edges.len();
    let mut g = Vec::with_capacity(k * k);
    for ei in &edges {
        for ej in &edges {
            g.push(ei.dot(ej));
        }
    }
    (edges, SquareMatrix::from_row_major(k, g))
}

/// Reference circumsphere with the center restricted to the affine hull.
///
/// Writes `Q = V0 + Σ t_j e_j` over the edge basis `e_j = V_j − V0` and
/// solves the Gram system `Σ_j (e_i·e_j) t_j = ‖e_i‖² / 2`. Accepts any
/// `2 ≤ k ≤ n + 1` points; used only as a test oracle.
pub fn constrained_lsq_reference(s: &SimplexN) -> Result<Sphere<VecN>> {
    let (edges, gram) = gram_system(s.vertices());
    let diag: f64 = (0..gram.dim()).map(|i| gram.get(i, i)).product();
    let gram_det = det(&gram);
    if !(gram_det > DEGENERACY_RATIO * diag) {
        return Err(GeometryError::DegenerateSimplex { measure: gram_det });
    }
    let rhs: Vec<f64> = (0..gram.dim()).map(|i| 0.5 * gram.get(i, i)).collect();
    let t = solve(&gram, &rhs).map_err(|e| match e {
        GeometryError::SingularSystem { pivot } => GeometryError::DegenerateSimplex { measure: pivot },
        other => other,
    })?;
    let mut offset = VecN::zeros(s.dim());
    for (tj, ej) in t.as_slice().iter().zip(&edges) {
        offset = offset.add(&ej.scale(*tj));
    }
    let radius_sq = offset.norm_sq();
    Ok(Sphere::new(s.vertices()[0].add(&offset), radius_sq))
}

/// Euclidean distance from `point` to the affine hull of `vertices`.
pub fn affine_hull_distance(point: &[f64], vertices: &[VecN]) -> Result<f64> {
    let (edges, gram) = gram_system(vertices);
    let p = VecN::from_raw(point.to_vec()).sub(&vertices[0]);
    let rhs: Vec<f64> = edges.iter().map(|e| e.dot(&p)).collect();
    let t = solve(&gram, &rhs)?;
    let mut proj = VecN::zeros(p.len());
    for (tj, ej) in t.as_slice().iter().zip(&edges) {
        proj = proj.add(&ej.scale(*tj));
    }
    Ok(p.sub(&proj).norm())
}

fn rel_err(value: f64, reference: f64) -> f64 {
    (value - reference).abs() / reference.abs().max(f64::MIN_POSITIVE)
}

#[derive(Default)]
struct Accumulator {
    report: ResidualReport,
}

impl Accumulator {
    fn add<V: Coords, P: Coords>(&mut self, sphere: &Sphere<V>, vertices: &[P], reference_r_sq: f64) {
        let r = &mut self.report;
        r.methods += 1;
        r.max_equidistance_rel = r.max_equidistance_rel.max(equidistance_residual(sphere, vertices));
        r.oracle_radius_rel_err = r.oracle_radius_rel_err.max(rel_err(sphere.radius_sq, reference_r_sq));
    }
}

/// Runs every applicable method and oracle on one vertex set.
///
/// * `n + 1` points in `E^n`: the linear method; in E³ also the closed
///   tetrahedron form and the Cayley–Menger check.
/// * `n` points in `E^n`: the facet projective method plus its hull check;
///   in E³ also the standard and projective triangle methods and the
///   side-length oracle.
///
/// Every method is compared against [`constrained_lsq_reference`].
pub fn verify_vertices(vertices: &[VecN]) -> Result<ResidualReport> {
    let simplex = SimplexN::new(vertices.to_vec())?;
    let n = simplex.dim();
    let reference = constrained_lsq_reference(&simplex)?;
    let mut acc = Accumulator::default();
    acc.add(&reference, vertices, reference.radius_sq);

    if simplex.len() == n + 1 {
        let linear = circumsphere_simplex_linear(&simplex)?;
        acc.add(&linear, vertices, reference.radius_sq);
        if n == 3 {
            let tet = Tetrahedron3::try_from_arrays(fixed3(vertices)?)?;
            let closed = circumsphere_tetrahedron_closed(&tet)?;
            acc.add(&closed, vertices, reference.radius_sq);
            let cm = cayley_menger_residual(&tet, linear.radius_sq).max(cayley_menger_residual(&tet, closed.radius_sq));
            acc.report.cayley_menger_rel = Some(cm);
        }
    } else if simplex.len() == n {
        let facet = circumsphere_facet_projective(&simplex)?;
        acc.add(&facet, vertices, reference.radius_sq);
        let radius = facet.radius().max(f64::MIN_POSITIVE);
        acc.report.center_hull_residual = affine_hull_distance(facet.center.as_slice(), vertices)? / radius;
        if n == 3 {
            let [a, b, c] = <[[f64; 3]; 3]>::try_from(&fixed3(vertices)?[..3]).expect("three vertices");
            let tri = Triangle3::try_from_arrays(a, b, c)?;
            let oracle = triangle_circumradius_oracle(&tri)?;
            let standard = circumsphere3_standard(&tri)?;
            let projective = circumsphere3_projective(&tri)?;
            acc.add(&standard, &tri.vertices, reference.radius_sq);
            acc.add(&projective, &tri.vertices, reference.radius_sq);
            let r = &mut acc.report;
            for s in [&standard, &projective] {
                r.oracle_radius_rel_err = r.oracle_radius_rel_err.max(rel_err(s.radius_sq, oracle));
            }
        }
    } else {
        return Err(GeometryError::VertexCount {
            expected: n + 1,
            actual: simplex.len(),
            dim: n,
        });
    }
    Ok(acc.report)
}

fn fixed3(vertices: &[VecN]) -> Result<[[f64; 3]; 4]> {
    let mut out = [[0.0; 3]; 4];
    for (slot, v) in out.iter_mut().zip(vertices) {
        *slot = v.to_fixed::<3>()?.0;
    }
    Ok(out)
}

/// Convenience: a triangle's vertices as dynamic vectors.
pub fn triangle_vertices(t: &Triangle3) -> Vec<VecN> {
    t.vertices.iter().map(Vec3::to_vecn).collect()
}
