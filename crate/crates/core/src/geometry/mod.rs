//! Exact geometry of rational V-polytopes: convex hull, triangulation,
//! volume and first moments, plus a seeded Monte-Carlo estimator used as an
//! independent check of the exact integrals.

mod hull;
mod moments;
mod montecarlo;
mod off;
mod triangulate;

pub use hull::convex_hull;
pub use moments::{moments, MomentData};
pub use montecarlo::{mc_moments, McEstimate};
pub use off::to_off;
pub use triangulate::{triangulate, triangulate_from, Simplex};

use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{self, QVec, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("need at least {needed} points in rank {rank}, got {found}")]
    TooFewPoints { rank: usize, needed: usize, found: usize },
    #[error("points of mixed rank ({0} and {1})")]
    MixedRank(usize, usize),
    #[error("points span an affine subspace of dimension {dim} < {rank}")]
    Degenerate { rank: usize, dim: usize },
    #[error("no Monte-Carlo sample landed inside the polytope after {0} draws")]
    NoAcceptedSamples(u64),
    #[error("OFF export needs a rank-3 polytope, got rank {0}")]
    NotThreeDimensional(usize),
}

/// Half-space `<normal, y> + offset ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Inequality {
    #[serde(with = "exact::rat_vec_string")]
    pub normal: QVec,
    #[serde(with = "exact::rat_string")]
    pub offset: Rat,
}

impl Inequality {
    pub fn eval(&self, y: &QVec) -> Rat {
        self.normal.dot(y) + &self.offset
    }

    pub fn holds(&self, y: &QVec) -> bool {
        !self.eval(y).is_negative()
    }

    pub fn eval_f64(&self, y: &[f64]) -> f64 {
        self.normal.to_f64().iter().zip(y).map(|(a, b)| a * b).sum::<f64>() + exact::rat_to_f64(&self.offset)
    }
}

/// A full-dimensional rational polytope given by points, with its exact
/// vertex and facet descriptions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VPolytope {
    pub(crate) rank: usize,
    /// Input points after removing duplicates, in input order.
    pub(crate) points: Vec<QVec>,
    /// Extremal points, sorted lexicographically.
    pub(crate) vertices: Vec<QVec>,
    /// Facet inequalities (primitive integer normals when coordinates are integral), sorted.
    pub(crate) facets: Vec<Inequality>,
}

impl VPolytope {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn points(&self) -> &[QVec] {
        &self.points
    }

    pub fn vertices(&self) -> &[QVec] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Inequality] {
        &self.facets
    }

    pub fn contains(&self, y: &QVec) -> bool {
        self.facets.iter().all(|f| f.holds(y))
    }

    pub fn strictly_contains(&self, y: &QVec) -> bool {
        self.facets.iter().all(|f| f.eval(y).is_positive())
    }

    /// Vertices lying on the given facet, in sorted order.
    pub fn facet_vertices(&self, facet: &Inequality) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&i| num_traits::Zero::is_zero(&facet.eval(&self.vertices[i]))).collect()
    }

    /// `-P`.
    pub fn negated(&self) -> VPolytope {
        convex_hull(&self.vertices.iter().map(QVec::neg).collect::<Vec<_>>()).expect("negation preserves dimension")
    }

    /// `k·P` for a positive rational `k`.
    pub fn dilated(&self, k: &Rat) -> VPolytope {
        assert!(k.is_positive(), "dilation factor must be positive");
        convex_hull(&self.vertices.iter().map(|v| v.scale(k)).collect::<Vec<_>>()).expect("dilation preserves dimension")
    }

    /// Exact lower and upper corners of the bounding box.
    pub fn bounding_box(&self) -> (QVec, QVec) {
        let lo = (0..self.rank).map(|i| self.vertices.iter().map(|v| v[i].clone()).min().unwrap()).collect();
        let hi = (0..self.rank).map(|i| self.vertices.iter().map(|v| v[i].clone()).max().unwrap()).collect();
        (lo, hi)
    }
}

/// Affine dimension of a point set (−1 for the empty set is reported as 0).
pub(crate) fn affine_dim(points: &[QVec]) -> usize {
    match points.split_first() {
        None => 0,
        Some((p0, rest)) => exact::rank_of(&rest.iter().map(|p| p.sub(p0)).collect::<Vec<_>>()),
    }
}
