//! Seeded input families.
//!
//! All draws come from a ChaCha8 stream seeded with the configured seed, so a
//! given configuration always produces the same coordinates on every platform.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::{BenchConfig, Family};
use crate::HarnessError;

/// Gram ratio every uniform simplex must exceed at each of its vertices.
pub const UNIFORM_MIN_CONDITIONING: f64 = 1e-6;

/// Largest degeneracy exponent for the needle and cap families.
pub const MAX_EXPONENT: u32 = 12;

/// Flat batch of simplices, `vertices_per_simplex × dim` coordinates each.
#[derive(Clone, Debug, PartialEq)]
pub struct Batch {
    pub dim: usize,
    pub vertices_per_simplex: usize,
    pub coords: Vec<f64>,
    /// Degeneracy exponent `k` of each simplex (needle and cap only).
    pub exponents: Vec<u32>,
    /// Uniform draws discarded by the conditioning filter.
    pub rejected: usize,
}

impl Batch {
    pub fn stride(&self) -> usize {
        self.dim * self.vertices_per_simplex
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.stride()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn simplex(&self, i: usize) -> &[f64] {
        let s = self.stride();
        &self.coords[i * s..(i + 1) * s]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks_exact(self.stride())
    }

    /// Little-endian bytes of every coordinate.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.coords.iter().flat_map(|c| c.to_le_bytes()).collect()
    }

    /// Fraction of uniform draws rejected by the conditioning filter.
    pub fn rejection_rate(&self) -> f64 {
        self.rejected as f64 / (self.rejected + self.len()) as f64
    }
}

/// Exponent used for the `i`-th simplex of a needle or cap batch.
pub fn exponent_for(i: usize) -> u32 {
    1 + (i as u32 % MAX_EXPONENT)
}

pub fn generate_inputs(cfg: &BenchConfig) -> Result<Batch, HarnessError> {
    cfg.validate()?;
    let dim = cfg.dim;
    let k = cfg.vertex_count();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut coords = Vec::with_capacity(cfg.count * k * dim);
    let mut exponents = Vec::new();
    let mut rejected = 0;
    for i in 0..cfg.count {
        let simplex = match cfg.family {
            Family::Uniform => {
                let (s, r) = uniform_simplex(&mut rng, dim, k);
                rejected += r;
                s
            }
            Family::Needle => {
                let e = exponent_for(i);
                exponents.push(e);
                needle_simplex(&mut rng, dim, k, e)
            }
            Family::Cap => {
                let e = exponent_for(i);
                exponents.push(e);
                cap_simplex(&mut rng, dim, k, e)
            }
        };
        for v in simplex {
            coords.extend(v);
        }
    }
    Ok(Batch {
        dim,
        vertices_per_simplex: k,
        coords,
        exponents,
        rejected,
    })
}

type Point = Vec<f64>;

fn uniform_point(rng: &mut impl Rng, dim: usize) -> Point {
    (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect()
}

fn sub(a: &[f64], b: &[f64]) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(y: &mut [f64], a: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

/// Orthonormal basis of the span of `vectors` (modified Gram–Schmidt),
/// skipping directions that are numerically dependent.
fn orthonormal_basis(vectors: &[Point]) -> Vec<Point> {
    let mut basis: Vec<Point> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for b in &basis {
            let c = dot(&w, b);
            axpy(&mut w, -c, b);
        }
        let norm = dot(&w, &w).sqrt();
        if norm > 1e-9 {
            basis.push(w.iter().map(|x| x / norm).collect());
        }
    }
    basis
}

/// Random unit vector orthogonal to every vector in `span`.
fn random_orthogonal_unit(rng: &mut impl Rng, dim: usize, span: &[Point]) -> Point {
    let basis = orthonormal_basis(span);
    loop {
        let mut w = uniform_point(rng, dim);
        for b in &basis {
            let c = dot(&w, b);
            axpy(&mut w, -c, b);
        }
        let norm = dot(&w, &w).sqrt();
        if norm > 1e-3 {
            return w.iter().map(|x| x / norm).collect();
        }
    }
}

/// Gram determinant of the edges leaving `apex`, over the product of their
/// squared lengths. Lies in `[0, 1]`; 1 for mutually orthogonal edges.
pub fn gram_ratio(vertices: &[Point], apex: usize) -> f64 {
    let edges: Vec<Point> = vertices
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != apex)
        .map(|(_, v)| sub(v, &vertices[apex]))
        .collect();
    let basis_norms: f64 = edges.iter().map(|e| dot(e, e)).product();
    if basis_norms == 0.0 {
        return 0.0;
    }
    // Gram determinant is the squared product of the Gram–Schmidt residual norms
    let mut ortho: Vec<Point> = Vec::new();
    let mut det = 1.0;
    for e in &edges {
        let mut w = e.clone();
        for b in &ortho {
            let c = dot(&w, b) / dot(b, b);
            axpy(&mut w, -c, b);
        }
        det *= dot(&w, &w);
        ortho.push(w);
    }
    det / basis_norms
}

/// Smallest Gram ratio over all choices of apex vertex.
pub fn conditioning(vertices: &[Point]) -> f64 {
    (0..vertices.len())
        .map(|apex| gram_ratio(vertices, apex))
        .fold(f64::INFINITY, f64::min)
}

fn uniform_simplex(rng: &mut impl Rng, dim: usize, k: usize) -> (Vec<Point>, usize) {
    let mut rejected = 0;
    loop {
        let v: Vec<Point> = (0..k).map(|_| uniform_point(rng, dim)).collect();
        if conditioning(&v) > UNIFORM_MIN_CONDITIONING {
            return (v, rejected);
        }
        rejected += 1;
    }
}

/// `count` well-spread points: conditioned and pairwise at least 0.5 apart.
fn frame(rng: &mut impl Rng, dim: usize, count: usize) -> Vec<Point> {
    loop {
        let v: Vec<Point> = (0..count).map(|_| uniform_point(rng, dim)).collect();
        let spread = (0..count).all(|i| (i + 1..count).all(|j| dot(&sub(&v[i], &v[j]), &sub(&v[i], &v[j])) >= 0.25));
        if spread && (count < 3 || conditioning(&v) > UNIFORM_MIN_CONDITIONING) {
            return v;
        }
    }
}

/// Two vertices `10^-e · s` apart (`s ∈ [1, 3]`), the offset orthogonal to
/// the line towards the last vertex. For a triangle this makes the angle at
/// the last vertex about `10^-e`.
fn needle_simplex(rng: &mut impl Rng, dim: usize, k: usize, e: u32) -> Vec<Point> {
    let base = frame(rng, dim, k - 1);
    let anchor = base[0].clone();
    let axis = sub(&anchor, &base[k - 2]);
    let w = random_orthogonal_unit(rng, dim, &[axis]);
    let s: f64 = rng.random_range(1.0..3.0);
    let mut twin = anchor.clone();
    axpy(&mut twin, 10f64.powi(-(e as i32)) * s, &w);
    let mut out = Vec::with_capacity(k);
    out.push(anchor);
    out.push(twin);
    out.extend(base.into_iter().skip(1));
    out
}

/// The last vertex is a random interior combination of the others, lifted off
/// their affine hull by `10^-e · s · scale`.
fn cap_simplex(rng: &mut impl Rng, dim: usize, k: usize, e: u32) -> Vec<Point> {
    let base = frame(rng, dim, k - 1);
    let weights: Vec<f64> = (0..base.len()).map(|_| rng.random_range(0.2..1.0)).collect();
    let total: f64 = weights.iter().sum();
    let mut apex = vec![0.0; dim];
    for (w, v) in weights.iter().zip(&base) {
        axpy(&mut apex, w / total, v);
    }
    let edges: Vec<Point> = base[1..].iter().map(|v| sub(v, &base[0])).collect();
    let scale = edges.iter().map(|e| dot(e, e).sqrt()).fold(0.0, f64::max);
    let w = random_orthogonal_unit(rng, dim, &edges);
    let s: f64 = rng.random_range(1.0..3.0);
    axpy(&mut apex, 10f64.powi(-(e as i32)) * s * scale, &w);
    let mut out = base;
    out.push(apex);
    out
}
