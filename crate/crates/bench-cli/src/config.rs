use std::fmt;
use std::str::FromStr;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::HarnessError;

/// Circumsphere algorithm selected on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Vector formula for a triangle in E³.
    Standard,
    /// Plane intersection in homogeneous coordinates for a triangle in E³.
    Projective,
    /// Linear system for `n + 1` points in `E^n`.
    Linear,
    /// Closed Cramer form for a tetrahedron in E³.
    TetraClosed,
    /// Hyperplane intersection for `n` points in `E^n`.
    FacetProjective,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Standard,
        Method::Projective,
        Method::Linear,
        Method::TetraClosed,
        Method::FacetProjective,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Standard => "standard",
            Method::Projective => "projective",
            Method::Linear => "linear",
            Method::TetraClosed => "tetra-closed",
            Method::FacetProjective => "facet-projective",
        }
    }

    /// Number of vertices per input simplex in ambient dimension `dim`.
    pub fn vertex_count(self, dim: usize) -> usize {
        match self {
            Method::Standard | Method::Projective => 3,
            Method::TetraClosed => 4,
            Method::Linear => dim + 1,
            Method::FacetProjective => dim,
        }
    }

    /// The only dimension the method supports, if it is fixed.
    pub fn fixed_dim(self) -> Option<usize> {
        match self {
            Method::Standard | Method::Projective | Method::TetraClosed => Some(3),
            Method::Linear | Method::FacetProjective => None,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = HarnessError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| HarnessError::Usage(format!("unknown method `{s}`")))
    }
}

/// Input family for generated batches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Vertices i.i.d. in `[-1, 1]^dim`, conditioning-filtered.
    Uniform,
    /// One pair of vertices at distance ~`10^-k`, `k` cycling 1..=12.
    Needle,
    /// Last vertex at height ~`10^-k` above the hull of the others.
    Cap,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Uniform => "uniform",
            Family::Needle => "needle",
            Family::Cap => "cap",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub method: Method,
    pub family: Family,
    pub count: usize,
    pub dim: usize,
    pub seed: u64,
    /// Take the square root of every result inside the timed loop.
    pub compute_radius: bool,
}

impl BenchConfig {
    pub fn new(method: Method, family: Family, count: usize, dim: usize, seed: u64) -> Self {
        Self {
            method,
            family,
            count,
            dim,
            seed,
            compute_radius: false,
        }
    }

    pub fn with_radius(mut self, compute_radius: bool) -> Self {
        self.compute_radius = compute_radius;
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.method.vertex_count(self.dim)
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.count == 0 {
            return Err(HarnessError::Usage("count must be at least 1".into()));
        }
        if self.dim < 2 {
            return Err(HarnessError::Usage(format!("dim must be at least 2, got {}", self.dim)));
        }
        if let Some(required) = self.method.fixed_dim() {
            if self.dim != required {
                return Err(HarnessError::Usage(format!(
                    "method {} requires dim {required}, got {}",
                    self.method, self.dim
                )));
            }
        }
        Ok(())
    }
}
