//! Fixed and runtime-dimension real vectors.
//!
//! [`Vector`] is a `Copy` array wrapper used on the E³ fast paths; [`VecN`]
//! carries vectors whose dimension is only known at runtime.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::error::{GeometryError, Result};

/// Read-only access to the components of a vector, whatever its storage.
pub trait Coords {
    fn as_slice(&self) -> &[f64];

    fn dim(&self) -> usize {
        self.as_slice().len()
    }

    fn dot_with(&self, other: &[f64]) -> f64 {
        dot(self.as_slice(), other)
    }

    fn dist_sq_to(&self, other: &[f64]) -> f64 {
        self.as_slice()
            .iter()
            .zip(other)
            .map(|(a, b)| {
                let d = a - b;
                d * d
            })
            .sum()
    }
}

// plain slices and vectors, so raw coordinate buffers can be checked directly
impl Coords for &[f64] {
    fn as_slice(&self) -> &[f64] {
        self
    }
}

impl Coords for Vec<f64> {
    fn as_slice(&self) -> &[f64] {
        self
    }
}

/// Dot product of two equal-length slices.
#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn check_finite(components: &[f64]) -> Result<()> {
    match components.iter().position(|c| !c.is_finite()) {
        Some(index) => Err(GeometryError::NonFinite { index }),
        None => Ok(()),
    }
}

/// Vector with a compile-time dimension.
#[derive(Clone, Copy, Debug, PartialEq)]
#[repr(transparent)]
pub struct Vector<const N: usize>(pub [f64; N]);

pub type Vec3 = Vector<3>;

impl<const N: usize> Vector<N> {
    pub const fn new(components: [f64; N]) -> Self {
        Self(components)
    }

    /// Builds a vector from user input, rejecting NaN and infinities.
    pub fn try_new(components: [f64; N]) -> Result<Self> {
        check_finite(&components)?;
        Ok(Self(components))
    }

    pub const fn zero() -> Self {
        Self([0.0; N])
    }

    #[inline]
    pub fn dot(&self, other: &Self) -> f64 {
        let mut acc = 0.0;
        for i in 0..N {
            acc += self.0[i] * other.0[i];
        }
        acc
    }

    #[inline]
    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    #[inline]
    pub fn scale(&self, s: f64) -> Self {
        let mut out = self.0;
        for c in &mut out {
            *c *= s;
        }
        Self(out)
    }

    pub fn to_vecn(&self) -> VecN {
        VecN(self.0.to_vec())
    }
}

impl Vector<3> {
    #[inline]
    pub fn x(&self) -> f64 {
        self.0[0]
    }

    #[inline]
    pub fn y(&self) -> f64 {
        self.0[1]
    }

    #[inline]
    pub fn z(&self) -> f64 {
        self.0[2]
    }

    /// Right-handed cross product.
    #[inline]
    pub fn cross(&self, other: &Self) -> Self {
        cross3(*self, *other)
    }
}

/// Cross product `u × v`.
///
/// Each component is the 2×2 minor `u_i v_j − u_j v_i`, written in the same
/// operand order as the cofactor expansion in [`super::cross_nd`], so the two
/// agree bit for bit.
#[inline]
pub fn cross3(u: Vec3, v: Vec3) -> Vec3 {
    let [u0, u1, u2] = u.0;
    let [v0, v1, v2] = v.0;
    Vector([u1 * v2 - u2 * v1, -(u0 * v2 - u2 * v0), u0 * v1 - u1 * v0])
}

impl<const N: usize> Default for Vector<N> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<const N: usize> Coords for Vector<N> {
    fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

impl<const N: usize> Index<usize> for Vector<N> {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl<const N: usize> IndexMut<usize> for Vector<N> {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.0[i]
    }
}

impl<const N: usize> Add for Vector<N> {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        let mut out = self.0;
        for (o, r) in out.iter_mut().zip(rhs.0) {
            *o += r;
        }
        Self(out)
    }
}

impl<const N: usize> Sub for Vector<N> {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        let mut out = self.0;
        for (o, r) in out.iter_mut().zip(rhs.0) {
            *o -= r;
        }
        Self(out)
    }
}

impl<const N: usize> Neg for Vector<N> {
    type Output = Self;
    fn neg(self) -> Self {
        let mut out = self.0;
        for o in &mut out {
            *o = -*o;
        }
        Self(out)
    }
}

impl<const N: usize> Mul<f64> for Vector<N> {
    type Output = Self;
    #[inline]
    fn mul(self, s: f64) -> Self {
        self.scale(s)
    }
}

impl<const N: usize> From<[f64; N]> for Vector<N> {
    fn from(a: [f64; N]) -> Self {
        Self(a)
    }
}

/// Vector whose dimension is fixed at construction time.
#[derive(Clone, Debug, PartialEq)]
pub struct VecN(Vec<f64>);

impl VecN {
    /// Validates finiteness and the minimum dimension of 2.
    pub fn new(components: Vec<f64>) -> Result<Self> {
        if components.len() < 2 {
            return Err(GeometryError::DimensionTooSmall(components.len()));
        }
        check_finite(&components)?;
        Ok(Self(components))
    }

    /// Wraps computed components without validation.
    pub(crate) fn from_raw(components: Vec<f64>) -> Self {
        Self(components)
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0.0; n])
    }

    /// Unit basis vector `e_axis` in dimension `n`.
    pub fn basis(n: usize, axis: usize) -> Self {
        let mut v = vec![0.0; n];
        v[axis] = 1.0;
        Self(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn dot(&self, other: &Self) -> f64 {
        dot(&self.0, &other.0)
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.iter().map(|a| a * s).collect())
    }

    /// Cross product for runtime vectors; both operands must be 3-dimensional.
    pub fn cross3(&self, other: &Self) -> Result<Self> {
        let u = self.to_fixed::<3>()?;
        let v = other.to_fixed::<3>()?;
        Ok(cross3(u, v).to_vecn())
    }

    /// Copies into a fixed-size vector when the dimension matches.
    pub fn to_fixed<const N: usize>(&self) -> Result<Vector<N>> {
        let arr: [f64; N] = self
            .0
            .as_slice()
            .try_into()
            .map_err(|_| GeometryError::DimensionMismatch {
                expected: N,
                actual: self.0.len(),
            })?;
        Ok(Vector(arr))
    }

    /// Appends a homogeneous component, giving `[self : w]`.
    pub fn extend_homogeneous(&self, w: f64) -> Self {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.extend_from_slice(&self.0);
        v.push(w);
        Self(v)
    }
}

impl Coords for VecN {
    fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

impl Index<usize> for VecN {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl<const N: usize> From<Vector<N>> for VecN {
    fn from(v: Vector<N>) -> Self {
        Self(v.0.to_vec())
    }
}

impl AsRef<[f64]> for VecN {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}
