use crate::linalg::{Coords, Vec3, VecN};

/// Circumscribed sphere: Euclidean center and squared radius.
///
/// Only `r²` is stored; [`Sphere::radius`] takes the square root on demand.
#[derive(Clone, Debug, PartialEq)]
pub struct Sphere<V = Vec3> {
    pub center: V,
    pub radius_sq: f64,
}

impl<V: Coords> Sphere<V> {
    pub fn new(center: V, radius_sq: f64) -> Self {
        Self { center, radius_sq }
    }

    pub fn radius(&self) -> f64 {
        self.radius_sq.sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.radius_sq.is_finite() && self.center.as_slice().iter().all(|c| c.is_finite())
    }

    /// Signed squared-distance excess of `point` over `r²`.
    pub fn power(&self, point: &[f64]) -> f64 {
        self.center.dist_sq_to(point) - self.radius_sq
    }

    pub fn contains(&self, point: &[f64]) -> bool {
        self.power(point) <= 0.0
    }

    pub fn to_dynamic(&self) -> Sphere<VecN> {
        Sphere {
            center: VecN::from_raw(self.center.as_slice().to_vec()),
            radius_sq: self.radius_sq,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radius_is_lazy_sqrt() {
        let s = Sphere::new(Vec3::new([1.0, 2.0, 3.0]), 4.0);
        assert_eq!(s.radius(), 2.0);
        assert!(s.contains(&[1.0, 2.0, 4.0]));
        assert!(!s.contains(&[1.0, 2.0, 5.1]));
        assert_eq!(s.to_dynamic().center.as_slice(), &[1.0, 2.0, 3.0]);
    }
}
