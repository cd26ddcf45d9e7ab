//! Small dense square matrices: determinants and a pivoted solver.

use crate::error::{GeometryError, Result};
use crate::linalg::vector::{Coords, VecN};

/// Relative pivot threshold used by [`solve`].
pub const SINGULAR_PIVOT_RATIO: f64 = 1e-13;

/// Dense `n × n` matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl SquareMatrix {
    /// Builds a matrix from rows, checking shape and finiteness.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            let row = row.as_ref();
            if row.len() != n {
                return Err(GeometryError::DimensionMismatch {
                    expected: n,
                    actual: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        if let Some(index) = entries.iter().position(|e| !e.is_finite()) {
            return Err(GeometryError::NonFinite { index });
        }
        Ok(Self { n, entries })
    }

    /// Unchecked constructor for matrices assembled from already-finite data.
    pub(crate) fn from_row_major(n: usize, entries: Vec<f64>) -> Self {
        debug_assert_eq!(entries.len(), n * n);
        Self { n, entries }
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1.0;
        }
        Self { n, entries }
    }

    pub fn diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = Self::identity(n);
        for (i, d) in diag.iter().enumerate() {
            m.entries[i * n + i] = *d;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.entries.iter().map(|e| e * e).sum::<f64>().sqrt()
    }

    /// Largest Euclidean row norm.
    pub fn max_row_norm(&self) -> f64 {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|e| e * e).sum::<f64>().sqrt())
            .fold(0.0, f64::max)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.n {
            self.entries.swap(a * self.n + j, b * self.n + j);
        }
    }

    pub fn determinant(&self) -> f64 {
        det(self)
    }
}

#[inline]
pub(crate) fn det2(m00: f64, m01: f64, m10: f64, m11: f64) -> f64 {
    m00 * m11 - m01 * m10
}

/// 3×3 determinant expanded along the last row, with the 2×2 minors taken
/// from the first two rows. The homogeneous cross products use this exact
/// expansion order.
#[inline]
pub(crate) fn det3(r0: [f64; 3], r1: [f64; 3], r2: [f64; 3]) -> f64 {
    r2[0] * det2(r0[1], r0[2], r1[1], r1[2]) - r2[1] * det2(r0[0], r0[2], r1[0], r1[2])
        + r2[2] * det2(r0[0], r0[1], r1[0], r1[1])
}

/// 4×4 determinant by Laplace expansion over the first two rows.
fn det4(m: &SquareMatrix) -> f64 {
    let r = |i: usize| m.row(i);
    let (a, b, c, d) = (r(0), r(1), r(2), r(3));
    let upper = |i: usize, j: usize| det2(a[i], a[j], b[i], b[j]);
    let lower = |i: usize, j: usize| det2(c[i], c[j], d[i], d[j]);
    upper(0, 1) * lower(2, 3) - upper(0, 2) * lower(1, 3) + upper(0, 3) * lower(1, 2) + upper(1, 2) * lower(0, 3)
        - upper(1, 3) * lower(0, 2)
        + upper(2, 3) * lower(0, 1)
}

/// Determinant of a square matrix.
///
/// Sizes up to 4 use closed cofactor formulas with a fixed evaluation order,
/// so repeated evaluation is bit-reproducible. Larger sizes use LU
/// factorisation with partial pivoting. Singular input yields zero or a tiny
/// residual value, never an error.
pub fn det(m: &SquareMatrix) -> f64 {
    match m.n {
        0 => 1.0,
        1 => m.entries[0],
        2 => det2(m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1)),
        3 => {
            let row = |i: usize| [m.get(i, 0), m.get(i, 1), m.get(i, 2)];
            det3(row(0), row(1), row(2))
        }
        4 => det4(m),
        _ => det_lu(m),
    }
}

fn det_lu(m: &SquareMatrix) -> f64 {
    let n = m.n;
    let mut a = m.clone();
    let mut sign = 1.0;
    for k in 0..n {
        let p = pivot_row(&a, k);
        if a.get(p, k) == 0.0 {
            return 0.0;
        }
        if p != k {
            a.swap_rows(p, k);
            sign = -sign;
        }
        eliminate_below(&mut a, None, k);
    }
    (0..n).fold(sign, |acc, i| acc * a.get(i, i))
}

fn pivot_row(a: &SquareMatrix, k: usize) -> usize {
    (k..a.n)
        .max_by(|&i, &j| a.get(i, k).abs().total_cmp(&a.get(j, k).abs()))
        .unwrap_or(k)
}

fn eliminate_below(a: &mut SquareMatrix, mut rhs: Option<&mut [f64]>, k: usize) {
    let n = a.n;
    let pivot = a.get(k, k);
    for i in k + 1..n {
        let factor = a.get(i, k) / pivot;
        if factor == 0.0 {
            continue;
        }
        a.entries[i * n + k] = 0.0;
        for j in k + 1..n {
            a.entries[i * n + j] -= factor * a.entries[k * n + j];
        }
        if let Some(b) = rhs.as_deref_mut() {
            b[i] -= factor * b[k];
        }
    }
}

/// Solves `m · x = rhs` by Gaussian elimination with partial pivoting.
///
/// A pivot with `|p| ≤ 1e-13 · max_row_norm(m)` is reported as
/// [`GeometryError::SingularSystem`].
pub fn solve(m: &SquareMatrix, rhs: &[f64]) -> Result<VecN> {
    let n = m.n;
    if rhs.len() != n {
        return Err(GeometryError::DimensionMismatch {
            expected: n,
            actual: rhs.len(),
        });
    }
    let threshold = SINGULAR_PIVOT_RATIO * m.max_row_norm();
    let mut a = m.clone();
    let mut b = rhs.to_vec();
    for k in 0..n {
        let p = pivot_row(&a, k);
        let pivot = a.get(p, k);
        if !(pivot.abs() > threshold) {
            return Err(GeometryError::SingularSystem { pivot: pivot.abs() });
        }
        a.swap_rows(p, k);
        b.swap(p, k);
        eliminate_below(&mut a, Some(&mut b), k);
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let tail: f64 = (i + 1..n).map(|j| a.get(i, j) * x[j]).sum();
        x[i] = (b[i] - tail) / a.get(i, i);
    }
    Ok(VecN::from_raw(x))
}

/// Residual `‖m·x − rhs‖₂`.
pub fn residual_norm(m: &SquareMatrix, x: &VecN, rhs: &[f64]) -> f64 {
    m.mul_vec(x.as_slice())
        .iter()
        .zip(rhs)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Leibniz permutation sum; independent of every evaluation path above.
    fn det_leibniz(m: &SquareMatrix) -> f64 {
        fn permutations(n: usize) -> Vec<(Vec<usize>, f64)> {
            if n == 0 {
                return vec![(vec![], 1.0)];
            }
            let mut out = Vec::new();
            for (p, s) in permutations(n - 1) {
                for pos in 0..n {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    // inserting at `pos` adds (n-1-pos) inversions
                    let sign = if (n - 1 - pos).is_multiple_of(2) { s } else { -s };
                    out.push((q, sign));
                }
            }
            out
        }
        permutations(m.dim())
            .into_iter()
            .map(|(p, s)| s * p.iter().enumerate().map(|(i, &j)| m.get(i, j)).product::<f64>())
            .sum()
    }

    fn pseudo_random_matrix(n: usize, seed: u64) -> SquareMatrix {
        let mut state = seed;
        let entries = (0..n * n)
            .map(|_| {
                state = state
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
            })
            .collect();
        SquareMatrix::from_row_major(n, entries)
    }

    #[test]
    fn det_examples() {
        assert_eq!(det(&SquareMatrix::identity(3)), 1.0);
        let m = SquareMatrix::from_rows(&[[1.0, 2.0], [3.0, 4.0]]).unwrap();
        assert_eq!(det(&m), -2.0);
        let dup = SquareMatrix::from_rows(&[[1.0, 2.0, 3.0], [4.0, 5.0, 6.0], [1.0, 2.0, 3.0]]).unwrap();
        assert_eq!(det(&dup), 0.0);
    }

    #[test]
    fn det_matches_leibniz_for_all_sizes() {
        for n in 1..=6 {
            for seed in 0..5 {
                let m = pseudo_random_matrix(n, seed * 31 + n as u64);
                let expected = det_leibniz(&m);
                let got = det(&m);
                assert!(
                    (got - expected).abs() <= 1e-12 * expected.abs().max(1.0),
                    "n={n} seed={seed}: {got} vs {expected}"
                );
            }
        }
    }

    #[test]
    fn det_row_swap_flips_sign() {
        for n in 2..=6 {
            let m = pseudo_random_matrix(n, 99 + n as u64);
            let mut swapped = m.clone();
            swapped.swap_rows(0, n - 1);
            let (a, b) = (det(&m), det(&swapped));
            assert!((a + b).abs() <= 1e-13 * a.abs().max(1.0), "n={n}");
        }
    }

    #[test]
    fn det_is_bit_reproducible() {
        let m = pseudo_random_matrix(4, 7);
        let first = det(&m);
        for _ in 0..10 {
            assert_eq!(det(&m).to_bits(), first.to_bits());
        }
    }

    #[test]
    fn solve_examples() {
        let x = solve(&SquareMatrix::identity(3), &[1.0, -2.0, 3.5]).unwrap();
        assert_eq!(x.as_slice(), &[1.0, -2.0, 3.5]);
        let x = solve(&SquareMatrix::diagonal(&[2.0, 4.0]), &[2.0, 8.0]).unwrap();
        assert_eq!(x.as_slice(), &[1.0, 2.0]);
    }

    #[test]
    fn solve_random_5x5_residual() {
        for seed in 0..20 {
            let mut m = pseudo_random_matrix(5, 1000 + seed);
            // diagonal dominance keeps the condition number small
            for i in 0..5 {
                m.entries[i * 5 + i] += 5.0;
            }
            let rhs = [0.5, -1.0, 2.0, 0.25, -0.75];
            let x = solve(&m, &rhs).unwrap();
            let rhs_norm = rhs.iter().map(|v| v * v).sum::<f64>().sqrt();
            assert!(residual_norm(&m, &x, &rhs) <= 1e-12 * rhs_norm);
        }
    }

    #[test]
    fn solve_reports_singular_pivot() {
        let m = SquareMatrix::from_rows(&[[1.0, 2.0], [2.0, 4.0]]).unwrap();
        match solve(&m, &[1.0, 1.0]) {
            Err(GeometryError::SingularSystem { pivot }) => assert!(pivot < 1e-12),
            other => panic!("expected SingularSystem, got {other:?}"),
        }
        assert!(matches!(
            solve(&SquareMatrix::from_row_major(2, vec![0.0; 4]), &[0.0, 0.0]),
            Err(GeometryError::SingularSystem { .. })
        ));
    }

    #[test]
    fn solve_checks_rhs_length() {
        assert_eq!(
            solve(&SquareMatrix::identity(3), &[1.0, 2.0]),
            Err(GeometryError::DimensionMismatch { expected: 3, actual: 2 })
        );
    }

    #[test]
    fn from_rows_validates() {
        assert!(SquareMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0]]).is_err());
        assert!(SquareMatrix::from_rows(&[[1.0, f64::NAN], [0.0, 1.0]]).is_err());
    }
}
