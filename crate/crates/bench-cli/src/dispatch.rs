//! Uniform entry point over all methods, working on flat coordinate slices.

use circumsphere::{
    circumsphere3_projective, circumsphere3_standard, circumsphere_facet_projective, circumsphere_simplex_linear,
    circumsphere_tetrahedron_closed, GeometryError, SimplexN, Sphere, Tetrahedron3, Triangle3, VecN,
};

use crate::config::Method;

/// Vertices of one simplex, vertex-major, as the typed input a method expects.
#[derive(Clone, Debug)]
pub enum Prepared {
    Triangle(Triangle3),
    Tetrahedron(Tetrahedron3),
    Simplex(SimplexN),
}

fn xyz(c: &[f64], i: usize) -> [f64; 3] {
    [c[3 * i], c[3 * i + 1], c[3 * i + 2]]
}

/// Builds the typed input for `method` from `coords` in ambient dimension `dim`.
pub fn prepare(method: Method, coords: &[f64], dim: usize) -> Result<Prepared, GeometryError> {
    let k = method.vertex_count(dim);
    if coords.len() != k * dim {
        return Err(GeometryError::VertexCount {
            expected: k,
            actual: coords.len() / dim.max(1),
            dim,
        });
    }
    if let Some(d) = method.fixed_dim() {
        if d != dim {
            return Err(GeometryError::DimensionMismatch {
                expected: d,
                actual: dim,
            });
        }
    }
    Ok(match method {
        Method::Standard | Method::Projective => Prepared::Triangle(Triangle3::try_from_arrays(
            xyz(coords, 0),
            xyz(coords, 1),
            xyz(coords, 2),
        )?),
        Method::TetraClosed => {
            Prepared::Tetrahedron(Tetrahedron3::try_from_arrays([0, 1, 2, 3].map(|i| xyz(coords, i)))?)
        }
        Method::Linear | Method::FacetProjective => {
            let rows: Vec<&[f64]> = coords.chunks_exact(dim).collect();
            Prepared::Simplex(SimplexN::from_rows(&rows)?)
        }
    })
}

/// Runs `method` on a prepared input.
pub fn solve_prepared(method: Method, input: &Prepared) -> Result<Sphere<VecN>, GeometryError> {
    match (method, input) {
        (Method::Standard, Prepared::Triangle(t)) => circumsphere3_standard(t).map(|s| s.to_dynamic()),
        (Method::Projective, Prepared::Triangle(t)) => circumsphere3_projective(t).map(|s| s.to_dynamic()),
        (Method::TetraClosed, Prepared::Tetrahedron(t)) => circumsphere_tetrahedron_closed(t).map(|s| s.to_dynamic()),
        (Method::Linear, Prepared::Simplex(s)) => circumsphere_simplex_linear(s),
        (Method::FacetProjective, Prepared::Simplex(s)) => circumsphere_facet_projective(s),
        _ => unreachable!("prepare() builds the input type matching the method"),
    }
}

/// Prepares and solves in one step.
pub fn compute(method: Method, coords: &[f64], dim: usize) -> Result<Sphere<VecN>, GeometryError> {
    solve_prepared(method, &prepare(method, coords, dim)?)
}

/// Short stable name for an error variant, used in summaries.
pub fn error_kind(e: &GeometryError) -> &'static str {
    match e {
        GeometryError::DimensionMismatch { .. } => "dimension-mismatch",
        GeometryError::VertexCount { .. } => "vertex-count",
        GeometryError::NonFinite { .. } => "non-finite",
        GeometryError::DimensionTooSmall(_) => "dimension-too-small",
        GeometryError::DegenerateTriangle { .. } => "degenerate-triangle",
        GeometryError::DegenerateSimplex { .. } => "degenerate-simplex",
        GeometryError::SingularSystem { .. } => "singular-system",
    }
}
