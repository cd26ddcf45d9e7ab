//! Homogeneous hyperplanes and points, and the extended cross product that
//! intersects hyperplanes in projective space.

use crate::error::{GeometryError, Result};
use crate::linalg::matrix::{det, det2, SquareMatrix};
use crate::linalg::vector::{Coords, Vec3, VecN, Vector};

/// Hyperplane `normal · x + d = 0`, i.e. the homogeneous vector `[normal : d]`.
#[derive(Clone, Debug, PartialEq)]
pub struct HomPlane<V = Vec3> {
    pub normal: V,
    pub d: f64,
}

/// Homogeneous point `[coords : w]`, the Euclidean point `coords / w` when
/// `w` is not (close to) zero.
#[derive(Clone, Debug, PartialEq)]
pub struct HomPoint<V = Vec3> {
    pub coords: V,
    pub w: f64,
}

impl<V: Coords> HomPlane<V> {
    pub fn new(normal: V, d: f64) -> Self {
        Self { normal, d }
    }

    /// Signed value of the plane equation at a Euclidean point.
    pub fn eval(&self, point: &[f64]) -> f64 {
        self.normal.dot_with(point) + self.d
    }

    /// Homogeneous dot product with a point; zero iff the point lies on the plane.
    pub fn dot_point(&self, p: &HomPoint<V>) -> f64 {
        self.normal.dot_with(p.coords.as_slice()) + self.d * p.w
    }

    pub fn to_homogeneous(&self) -> VecN {
        VecN::from_raw(self.normal.as_slice().to_vec()).extend_homogeneous(self.d)
    }
}

impl HomPlane<Vec3> {
    #[inline]
    pub fn to_array(&self) -> [f64; 4] {
        let [a, b, c] = self.normal.0;
        [a, b, c, self.d]
    }

    #[inline]
    pub fn from_array([a, b, c, d]: [f64; 4]) -> Self {
        Self {
            normal: Vector([a, b, c]),
            d,
        }
    }
}

impl<V: Coords> HomPoint<V> {
    pub fn new(coords: V, w: f64) -> Self {
        Self { coords, w }
    }

    pub fn to_homogeneous(&self) -> VecN {
        VecN::from_raw(self.coords.as_slice().to_vec()).extend_homogeneous(self.w)
    }

    pub fn is_zero(&self) -> bool {
        self.w == 0.0 && self.coords.as_slice().iter().all(|c| *c == 0.0)
    }
}

impl HomPoint<Vec3> {
    #[inline]
    pub fn to_array(&self) -> [f64; 4] {
        let [x, y, z] = self.coords.0;
        [x, y, z, self.w]
    }

    #[inline]
    pub fn from_array([x, y, z, w]: [f64; 4]) -> Self {
        Self {
            coords: Vector([x, y, z]),
            w,
        }
    }

    /// Euclidean point, or `None` when `|w| ≤ threshold`.
    pub fn to_euclidean(&self, threshold: f64) -> Option<Vec3> {
        (self.w.abs() > threshold).then(|| self.coords.scale(1.0 / self.w))
    }
}

impl HomPoint<VecN> {
    pub fn from_homogeneous(v: VecN) -> Self {
        let mut raw = v.into_inner();
        let w = raw.pop().expect("homogeneous vector has a weight");
        Self {
            coords: VecN::from_raw(raw),
            w,
        }
    }

    pub fn to_euclidean(&self, threshold: f64) -> Option<VecN> {
        (self.w.abs() > threshold).then(|| self.coords.scale(1.0 / self.w))
    }
}

/// Extended cross product of three 4-vectors.
///
/// Formal expansion of the 4×4 determinant whose first row is the symbolic
/// basis `(i, j, k, l)` and whose remaining rows are `x1, x2, x3`:
/// component `j` is `(−1)^j · det(minor_j)` (zero-based). The result is
/// orthogonal to all three inputs and vanishes when they are dependent.
#[inline]
pub fn cross4_raw(x1: [f64; 4], x2: [f64; 4], x3: [f64; 4]) -> [f64; 4] {
    // the six 2×2 minors of the first two rows, shared by all four 3×3 minors;
    // same operation order as `det3`, so results match it bit for bit
    let p = |i: usize, j: usize| det2(x1[i], x1[j], x2[i], x2[j]);
    let (p01, p02, p03, p12, p13, p23) = (p(0, 1), p(0, 2), p(0, 3), p(1, 2), p(1, 3), p(2, 3));
    let minor = |c: [usize; 3], q12: f64, q02: f64, q01: f64| x3[c[0]] * q12 - x3[c[1]] * q02 + x3[c[2]] * q01;
    [
        minor([1, 2, 3], p23, p13, p12),
        -minor([0, 2, 3], p23, p03, p02),
        minor([0, 1, 3], p13, p03, p01),
        -minor([0, 1, 2], p12, p02, p01),
    ]
}

/// Intersection point of three planes in projective 3-space.
pub fn cross4(x1: &HomPlane, x2: &HomPlane, x3: &HomPlane) -> HomPoint {
    HomPoint::from_array(cross4_raw(x1.to_array(), x2.to_array(), x3.to_array()))
}

/// Dot product of two 4-vectors.
#[inline]
pub fn dot4(a: [f64; 4], b: [f64; 4]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]
}

/// Extended cross product of `n` vectors of dimension `n + 1`.
///
/// Component `j` (zero-based) is `(−1)^j · det(minor_j)`, where `minor_j`
/// drops column `j` from the `n × (n+1)` matrix of rows. For `n = 2` this is
/// the ordinary cross product and for `n = 3` it equals [`cross4`] bit for bit.
pub fn cross_nd<R: AsRef<[f64]>>(rows: &[R]) -> Result<VecN> {
    let n = rows.len();
    if n == 0 {
        return Err(GeometryError::DimensionMismatch { expected: 1, actual: 0 });
    }
    for r in rows {
        if r.as_ref().len() != n + 1 {
            return Err(GeometryError::DimensionMismatch {
                expected: n + 1,
                actual: r.as_ref().len(),
            });
        }
    }
    let mut out = Vec::with_capacity(n + 1);
    let mut minor = Vec::with_capacity(n * n);
    for j in 0..=n {
        minor.clear();
        for r in rows {
            let r = r.as_ref();
            minor.extend(r[..j].iter().chain(&r[j + 1..]));
        }
        let value = det(&SquareMatrix::from_row_major(n, minor.clone()));
        out.push(if j % 2 == 0 { value } else { -value });
    }
    Ok(VecN::from_raw(out))
}
