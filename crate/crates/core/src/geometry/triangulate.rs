use num_traits::{Signed, Zero};

use super::{affine_dim, VPolytope};
use crate::exact::{self, QVec, Rat};

/// An `n`-simplex given by its `n+1` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Simplex {
    pub vertices: Vec<QVec>,
}

impl Simplex {
    /// `det(w_i - w_0)`; nonzero for a proper simplex.
    pub fn signed_volume_factor(&self) -> Rat {
        let w0 = &self.vertices[0];
        let edges: Vec<QVec> = self.vertices[1..].iter().map(|w| w.sub(w0)).collect();
        exact::det_rows(&edges).expect("n edges in rank n")
    }

    /// Euclidean volume `|det(w_i - w_0)| / n!`.
    pub fn volume(&self) -> Rat {
        let n = self.vertices.len() - 1;
        let fact: u64 = (1..=n as u64).product();
        self.signed_volume_factor().abs() / Rat::from_integer(fact.into())
    }
}

/// Pulling triangulation from the lexicographically least vertex: the apex is
/// coned over every facet that misses it, and each such facet is triangulated
/// the same way from its own least vertex.
pub fn triangulate(p: &VPolytope) -> Vec<Simplex> {
    triangulate_from(p, 0)
}

/// Pulling triangulation with the top-level apex `p.vertices()[apex]`. Lower
/// faces always pull from their lexicographically least vertex.
pub fn triangulate_from(p: &VPolytope, apex: usize) -> Vec<Simplex> {
    // incidence[v] = facets containing vertex v
    let incidence: Vec<Vec<bool>> = p
        .vertices
        .iter()
        .map(|v| p.facets.iter().map(|f| f.eval(v).is_zero()).collect())
        .collect();
    let all: Vec<usize> = (0..p.vertices.len()).collect();
    let mut cells = Vec::new();
    pull(p, &incidence, &all, p.rank, Some(apex), &mut Vec::new(), &mut cells);
    cells
        .into_iter()
        .map(|idx| Simplex { vertices: idx.into_iter().map(|i| p.vertices[i].clone()).collect() })
        .collect()
}

/// Triangulates the face with vertex set `face` (dimension `dim`), prefixing each
/// cell with the apexes chosen higher up in `prefix`.
fn pull(
    p: &VPolytope,
    incidence: &[Vec<bool>],
    face: &[usize],
    dim: usize,
    apex: Option<usize>,
    prefix: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if dim == 0 {
        let mut cell = prefix.clone();
        cell.push(face[0]);
        out.push(cell);
        return;
    }
    let apex = apex.unwrap_or(face[0]);
    prefix.push(apex);
    for sub in subfaces(p, incidence, face, dim) {
        if !sub.contains(&apex) {
            pull(p, incidence, &sub, dim - 1, None, prefix, out);
        }
    }
    prefix.pop();
}

/// Faces of dimension `dim - 1` of the face `face`, as sorted vertex index lists.
fn subfaces(p: &VPolytope, incidence: &[Vec<bool>], face: &[usize], dim: usize) -> Vec<Vec<usize>> {
    let mut found: Vec<Vec<usize>> = Vec::new();
    for fi in 0..p.facets.len() {
        if face.iter().all(|&v| incidence[v][fi]) {
            continue;
        }
        let sub: Vec<usize> = face.iter().copied().filter(|&v| incidence[v][fi]).collect();
        if sub.is_empty() || found.contains(&sub) {
            continue;
        }
        let pts: Vec<QVec> = sub.iter().map(|&i| p.vertices[i].clone()).collect();
        if affine_dim(&pts) + 1 == dim {
            found.push(sub);
        }
    }
    found
}
