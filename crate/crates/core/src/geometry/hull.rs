use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use super::{affine_dim, GeometryError, Inequality, VPolytope};
use crate::exact::{self, QVec};
use crate::subsets;

/// Convex hull by brute-force facet enumeration over `n`-subsets of points.
///
/// Each affinely independent `n`-subset spans a hyperplane; it is kept when
/// every point lies weakly on one side. Normals are made primitive so the
/// same facet found from different subsets deduplicates.
pub fn convex_hull(points: &[QVec]) -> Result<VPolytope, GeometryError> {
    let rank = points.first().map_or(0, QVec::rank);
    if let Some(p) = points.iter().find(|p| p.rank() != rank) {
        return Err(GeometryError::MixedRank(rank, p.rank()));
    }
    let mut seen = BTreeSet::new();
    let pts: Vec<QVec> = points.iter().filter(|p| seen.insert((*p).clone())).cloned().collect();
    if rank == 0 || pts.len() < rank + 1 {
        return Err(GeometryError::TooFewPoints { rank, needed: rank + 1, found: pts.len() });
    }
    let dim = affine_dim(&pts);
    if dim < rank {
        return Err(GeometryError::Degenerate { rank, dim });
    }

    let mut facets: BTreeSet<Inequality> = BTreeSet::new();
    for s in subsets(pts.len(), rank) {
        let base = &pts[s[0]];
        let edges: Vec<QVec> = s[1..].iter().map(|&i| pts[i].sub(base)).collect();
        let u = exact::orthogonal_complement_vector(&edges, rank);
        if u.is_zero() {
            continue;
        }
        let u = u.primitive_direction().expect("nonzero");
        let c = u.dot(base);
        let vals: Vec<_> = pts.iter().map(|p| u.dot(p) - &c).collect();
        let (normal, offset) = if vals.iter().all(|v| !v.is_negative()) {
            (u, -c)
        } else if vals.iter().all(|v| !v.is_positive()) {
            (u.neg(), c)
        } else {
            continue;
        };
        facets.insert(Inequality { normal, offset });
    }

    let mut vertices: Vec<QVec> = pts
        .iter()
        .filter(|p| {
            let tight: Vec<QVec> = facets.iter().filter(|f| f.eval(p).is_zero()).map(|f| f.normal.clone()).collect();
            exact::rank_of(&tight) == rank
        })
        .cloned()
        .collect();
    vertices.sort();
    Ok(VPolytope { rank, points: pts, vertices, facets: facets.into_iter().collect() })
}
