#![allow(dead_code)]

use circumsphere::{Tetrahedron3, Triangle3, Vec3, VecN};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform_point(rng: &mut impl Rng, dim: usize) -> Vec<f64> {
    (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect()
}

fn uniform3(rng: &mut impl Rng) -> Vec3 {
    Vec3::new([
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
    ])
}

/// Gram determinant of the edges from vertex 0 over the product of squared edge lengths.
pub fn gram_ratio(vertices: &[Vec<f64>]) -> f64 {
    let edges: Vec<Vec<f64>> = vertices[1..]
        .iter()
        .map(|v| v.iter().zip(&vertices[0]).map(|(a, b)| a - b).collect())
        .collect();
    let k = edges.len();
    let mut g = vec![vec![0.0; k]; k];
    for i in 0..k {
        for j in 0..k {
            g[i][j] = edges[i].iter().zip(&edges[j]).map(|(a, b)| a * b).sum();
        }
    }
    let diag: f64 = (0..k).map(|i| g[i][i]).product();
    gauss_det(g) / diag
}

/// Plain Gaussian-elimination determinant, kept separate from the crate's.
pub fn gauss_det(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut d = 1.0;
    for k in 0..n {
        let p = (k..n).max_by(|&a, &b| m[a][k].abs().total_cmp(&m[b][k].abs())).unwrap();
        if m[p][k] == 0.0 {
            return 0.0;
        }
        if p != k {
            m.swap(p, k);
            d = -d;
        }
        for i in k + 1..n {
            let f = m[i][k] / m[k][k];
            let pivot_row = m[k].clone();
            for (x, p) in m[i][k..].iter_mut().zip(&pivot_row[k..]) {
                *x -= f * p;
            }
        }
        d *= m[k][k];
    }
    d
}

/// `count` vertices uniform in `[-1, 1]^dim`, redrawn until the Gram ratio
/// at every vertex exceeds `min_ratio`.
pub fn conditioned_simplex(rng: &mut impl Rng, dim: usize, count: usize, min_ratio: f64) -> Vec<Vec<f64>> {
    loop {
        let v: Vec<Vec<f64>> = (0..count).map(|_| uniform_point(rng, dim)).collect();
        let ok = (0..count).all(|apex| {
            let mut rotated = v.clone();
            rotated.rotate_left(apex);
            gram_ratio(&rotated) > min_ratio
        });
        if ok {
            return v;
        }
    }
}

pub fn random_triangle(rng: &mut impl Rng) -> Triangle3 {
    let v = conditioned_simplex(rng, 3, 3, 1e-6);
    to_triangle(&v)
}

pub fn random_tetrahedron(rng: &mut impl Rng) -> Tetrahedron3 {
    let v = conditioned_simplex(rng, 3, 4, 1e-6);
    Tetrahedron3::try_from_arrays([0, 1, 2, 3].map(|i| [v[i][0], v[i][1], v[i][2]])).unwrap()
}

pub fn to_triangle(v: &[Vec<f64>]) -> Triangle3 {
    Triangle3::try_from_arrays(
        [v[0][0], v[0][1], v[0][2]],
        [v[1][0], v[1][1], v[1][2]],
        [v[2][0], v[2][1], v[2][2]],
    )
    .unwrap()
}

pub fn to_vecn(v: &[Vec<f64>]) -> Vec<VecN> {
    v.iter().map(|p| VecN::new(p.clone()).unwrap()).collect()
}

/// Regular n-simplex with unit edges in `E^n`: each new vertex sits above the
/// centroid of the previous ones at the height that makes all edges 1.
pub fn regular_simplex(n: usize) -> Vec<Vec<f64>> {
    let mut vertices = vec![vec![0.0; n]];
    for k in 1..=n {
        let count = vertices.len() as f64;
        let mut centroid = vec![0.0; n];
        for v in &vertices {
            for (c, x) in centroid.iter_mut().zip(v) {
                *c += x / count;
            }
        }
        let dist_sq: f64 = centroid.iter().zip(&vertices[0]).map(|(a, b)| (a - b) * (a - b)).sum();
        centroid[k - 1] = (1.0 - dist_sq).sqrt();
        vertices.push(centroid);
    }
    vertices
}

pub fn max_edge_error(vertices: &[Vec<f64>]) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            let d: f64 = vertices[i]
                .iter()
                .zip(&vertices[j])
                .map(|(a, b)| (a - b) * (a - b))
                .sum();
            worst = worst.max((d - 1.0).abs());
        }
    }
    worst
}

/// Random rotation of E³ from a random axis and angle (Rodrigues).
pub fn random_rotation(rng: &mut impl Rng) -> [[f64; 3]; 3] {
    let axis = loop {
        let a = uniform3(rng);
        if a.norm_sq() > 1e-3 {
            break a.scale(1.0 / a.norm());
        }
    };
    let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    let (s, c) = theta.sin_cos();
    let [x, y, z] = axis.0;
    let t = 1.0 - c;
    [
        [t * x * x + c, t * x * y - s * z, t * x * z + s * y],
        [t * x * y + s * z, t * y * y + c, t * y * z - s * x],
        [t * x * z - s * y, t * y * z + s * x, t * z * z + c],
    ]
}

pub fn rotate(r: &[[f64; 3]; 3], p: Vec3) -> Vec3 {
    Vec3::new([0, 1, 2].map(|i| r[i][0] * p[0] + r[i][1] * p[1] + r[i][2] * p[2]))
}

pub fn random_vec3(rng: &mut impl Rng) -> Vec3 {
    uniform3(rng)
}
