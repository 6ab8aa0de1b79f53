//! Q-Gorenstein data, the almost Fano test, divisor polytopes and their
//! lattice points.
//!
//! Sign convention: the anticanonical polytope is `P_{-K} = conv{-k_σ}`,
//! where `<n_i, k_σ> = 1` on the generators of each maximal cone. Vertex
//! lists quoted as `conv{k_σ}` describe `-P_{-K}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{self, LinalgError, QMat, QVec, Rat};
use crate::fan::Fan;
use crate::geometry::{self, GeometryError, Inequality, VPolytope};
use crate::subsets;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanoError {
    #[error("not Q-Gorenstein: the system <n_i, k> = 1 for cone {cone} is inconsistent")]
    NotQGorenstein { cone: usize },
    #[error("maximal cone {cone} is not full-dimensional")]
    LowerDimensionalCone { cone: usize },
    #[error("polytope is unbounded")]
    Unbounded,
    #[error("divisor has {found} coefficients but the fan has {expected} rays")]
    DivisorLength { expected: usize, found: usize },
    #[error("fan is not almost Fano")]
    NotAlmostFano(AlmostFanoReport),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// A torus-invariant divisor `Σ a_i D_i`, one coefficient per ray.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TCartierDivisor {
    pub coeffs: Vec<BigInt>,
}

impl TCartierDivisor {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        TCartierDivisor { coeffs }
    }

    /// `k · Σ D_i`.
    pub fn anticanonical_multiple(f: &Fan, k: &BigInt) -> Self {
        TCartierDivisor { coeffs: vec![k.clone(); f.rays().len()] }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GorensteinData {
    /// `k_σ` for each maximal cone, in the fan's cone order.
    pub k_sigma: Vec<QVec>,
    /// Least positive integer making every `k_σ` integral.
    pub index: BigInt,
}

impl GorensteinData {
    pub fn is_gorenstein(&self) -> bool {
        self.index.is_one()
    }
}

/// Solves `<n_i, k_σ> = 1` on every maximal cone.
pub fn gorenstein_data(f: &Fan) -> Result<GorensteinData, FanoError> {
    let mut k_sigma = Vec::with_capacity(f.max_cones().len());
    let mut index = BigInt::one();
    for (ci, c) in f.max_cones().iter().enumerate() {
        let gens = f.generators(c);
        let a = QMat::from_rows(&gens).expect("uniform rank");
        let ones = QVec::new(vec![Rat::one(); gens.len()]);
        let k = match exact::solve(&a, &ones) {
            Ok(k) => k,
            Err(LinalgError::NoSolution) => return Err(FanoError::NotQGorenstein { cone: ci }),
            Err(_) => return Err(FanoError::LowerDimensionalCone { cone: ci }),
        };
        assert!(gens.iter().all(|g| g.dot(&k).is_one()), "k_sigma must pair to 1 with every generator");
        for r in k.iter() {
            index = index.lcm(r.denom());
        }
        k_sigma.push(k);
    }
    Ok(GorensteinData { k_sigma, index })
}

/// `conv{-k_σ}`.
pub fn anticanonical_polytope(g: &GorensteinData) -> Result<VPolytope, FanoError> {
    let pts: Vec<QVec> = g.k_sigma.iter().map(QVec::neg).collect();
    Ok(geometry::convex_hull(&pts)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlmostFanoReport {
    pub almost_fano: bool,
    pub full_dimensional: bool,
    /// Cones whose `-k_σ` is not a vertex of `conv{-k_σ}`.
    pub non_extremal_cones: Vec<usize>,
    /// Pairs of distinct cones with the same `k_σ`.
    pub coincident_cones: Vec<(usize, usize)>,
    /// `(cone, ray)` with the ray outside the cone but `<v, k_σ> ≥ 1`; the
    /// anticanonical divisor then fails to be strictly convex on the fan.
    pub non_convex: Vec<(usize, usize)>,
}

pub fn is_almost_fano(f: &Fan, g: &GorensteinData) -> AlmostFanoReport {
    let pts: Vec<QVec> = g.k_sigma.iter().map(QVec::neg).collect();
    let hull = geometry::convex_hull(&pts).ok();
    let full_dimensional = hull.is_some();
    let non_extremal_cones = match &hull {
        Some(h) => (0..pts.len()).filter(|&i| h.vertices().binary_search(&pts[i]).is_err()).collect(),
        None => Vec::new(),
    };
    let mut coincident_cones = Vec::new();
    for (i, j) in (0..pts.len()).flat_map(|i| (i + 1..pts.len()).map(move |j| (i, j))) {
        if pts[i] == pts[j] {
            coincident_cones.push((i, j));
        }
    }
    let mut non_convex = Vec::new();
    for (ci, c) in f.max_cones().iter().enumerate() {
        for (ri, v) in f.rays().iter().enumerate() {
            if !c.ray_indices.contains(&ri) && v.dot(&g.k_sigma[ci]) >= Rat::one() {
                non_convex.push((ci, ri));
            }
        }
    }
    let almost_fano =
        full_dimensional && non_extremal_cones.is_empty() && coincident_cones.is_empty() && non_convex.is_empty();
    AlmostFanoReport { almost_fano, full_dimensional, non_extremal_cones, coincident_cones, non_convex }
}

/// Polytope `{u : <u, n_i> + offset_i ≥ 0}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HPolytope {
    pub inequalities: Vec<Inequality>,
}

impl HPolytope {
    pub fn rank(&self) -> usize {
        self.inequalities.first().map_or(0, |i| i.normal.rank())
    }

    pub fn contains(&self, u: &QVec) -> bool {
        self.inequalities.iter().all(|i| i.holds(u))
    }

    /// Bounded iff the recession cone `{d : <n_i, d> ≥ 0}` is `{0}`.
    pub fn is_bounded(&self) -> bool {
        let n = self.rank();
        let normals: Vec<QVec> = self.inequalities.iter().map(|i| i.normal.clone()).collect();
        if n == 0 || exact::rank_of(&normals) < n {
            return false;
        }
        for s in subsets(normals.len(), n - 1) {
            let rows: Vec<QVec> = s.iter().map(|&i| normals[i].clone()).collect();
            let d = exact::orthogonal_complement_vector(&rows, n);
            if d.is_zero() {
                continue;
            }
            for cand in [d.clone(), d.neg()] {
                if normals.iter().all(|u| !u.dot(&cand).is_negative()) {
                    return false;
                }
            }
        }
        true
    }

    /// Vertex enumeration by brute force over `n`-subsets of inequalities.
    pub fn vertices(&self) -> Result<Vec<QVec>, FanoError> {
        if !self.is_bounded() {
            return Err(FanoError::Unbounded);
        }
        let n = self.rank();
        let mut out: Vec<QVec> = Vec::new();
        for s in subsets(self.inequalities.len(), n) {
            let rows: Vec<QVec> = s.iter().map(|&i| self.inequalities[i].normal.clone()).collect();
            let rhs: QVec = s.iter().map(|&i| -&self.inequalities[i].offset).collect();
            let Ok(x) = exact::solve(&QMat::from_rows(&rows).expect("uniform rank"), &rhs) else { continue };
            if self.contains(&x) && !out.contains(&x) {
                out.push(x);
            }
        }
        out.sort();
        Ok(out)
    }

    /// Integer points, sorted lexicographically.
    pub fn lattice_points(&self) -> Result<Vec<QVec>, FanoError> {
        let verts = self.vertices()?;
        let Some(first) = verts.first() else { return Ok(Vec::new()) };
        let n = first.rank();
        let lo: Vec<BigInt> = (0..n).map(|i| verts.iter().map(|v| v[i].ceil().to_integer()).min().unwrap()).collect();
        let hi: Vec<BigInt> = (0..n).map(|i| verts.iter().map(|v| v[i].floor().to_integer()).max().unwrap()).collect();
        let mut out = Vec::new();
        let mut cur = lo.clone();
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return Ok(out);
        }
        loop {
            let u: QVec = cur.iter().map(|x| Rat::from_integer(x.clone())).collect();
            if self.contains(&u) {
                out.push(u);
            }
            // odometer, last axis fastest, so output is lexicographic
            let mut i = n;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                if cur[i] < hi[i] {
                    cur[i] += 1;
                    cur[i + 1..n].clone_from_slice(&lo[i + 1..n]);
                    break;
                }
            }
        }
    }
}

/// `P_D = {u : <u, v_i> ≥ -a_i}`, one inequality per ray, no redundancy removal.
pub fn divisor_polytope(f: &Fan, d: &TCartierDivisor) -> Result<HPolytope, FanoError> {
    if d.coeffs.len() != f.rays().len() {
        return Err(FanoError::DivisorLength { expected: f.rays().len(), found: d.coeffs.len() });
    }
    let inequalities = f
        .rays()
        .iter()
        .zip(&d.coeffs)
        .map(|(v, a)| Inequality { normal: v.clone(), offset: Rat::from_integer(a.clone()) })
        .collect();
    Ok(HPolytope { inequalities })
}

pub fn lattice_points(p: &HPolytope) -> Result<Vec<QVec>, FanoError> {
    p.lattice_points()
}

/// Multiset comparison of computed `k_σ` against a reference vertex list.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct BijectionReport {
    /// Reference points hit by exactly one cone.
    pub matched: usize,
    /// Computed `k_σ` with no counterpart in the reference list, with the cone index.
    #[serde(serialize_with = "ser_cone_points")]
    pub unmatched_cones: Vec<(usize, QVec)>,
    /// Reference points with no cone.
    #[serde(serialize_with = "ser_points")]
    pub unmatched_reference: Vec<QVec>,
}

fn ser_points<S: serde::Serializer>(v: &[QVec], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|p| p.iter().map(exact::format_rat).collect::<Vec<_>>()))
}

fn ser_cone_points<S: serde::Serializer>(v: &[(usize, QVec)], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|(c, p)| (c, p.iter().map(exact::format_rat).collect::<Vec<_>>())))
}

impl BijectionReport {
    pub fn is_bijection(&self) -> bool {
        self.unmatched_cones.is_empty() && self.unmatched_reference.is_empty()
    }
}

/// Compares `{k_σ}` with `reference` (both as multisets). `reference` uses the
/// `conv{k_σ}` orientation.
pub fn compare_k_sigma(g: &GorensteinData, reference: &[QVec]) -> BijectionReport {
    let mut pool: BTreeMap<&QVec, usize> = BTreeMap::new();
    for r in reference {
        *pool.entry(r).or_default() += 1;
    }
    let mut report = BijectionReport::default();
    for (ci, k) in g.k_sigma.iter().enumerate() {
        match pool.get_mut(k) {
            Some(c) if *c > 0 => {
                *c -= 1;
                report.matched += 1;
            }
            _ => report.unmatched_cones.push((ci, k.clone())),
        }
    }
    for (p, c) in pool {
        report.unmatched_reference.extend(std::iter::repeat_n(p.clone(), c));
    }
    report
}

/// Rebuilds the maximal cones from the rays alone, as the normal fan of
/// `P = {u : <u, v_i> ≥ -1}`: the cone at a vertex `w` is spanned by the rays
/// with `<w, v_i> = -1`. For an almost Fano variety this is its fan.
pub fn reconcile_fan(f: &Fan) -> Result<Fan, FanoError> {
    let p = divisor_polytope(f, &TCartierDivisor::anticanonical_multiple(f, &BigInt::one()))?;
    let verts = p.vertices()?;
    let minus_one = -Rat::one();
    let cones: Vec<Vec<usize>> = verts
        .iter()
        .map(|w| (0..f.rays().len()).filter(|&i| f.rays()[i].dot(w) == minus_one).collect())
        .collect();
    let mut out = Fan::new(f.rank(), f.rays().to_vec(), cones).expect("rays already checked");
    if let Some(name) = f.name() {
        out = out.with_name(name);
    }
    Ok(out)
}

/// Gorenstein data plus the almost Fano verdict and `P_{-K}`, failing if the
/// fan is not almost Fano.
pub fn anticanonical_data(f: &Fan) -> Result<(GorensteinData, VPolytope), FanoError> {
    let g = gorenstein_data(f)?;
    let report = is_almost_fano(f, &g);
    if !report.almost_fano {
        return Err(FanoError::NotAlmostFano(report));
    }
    let p = anticanonical_polytope(&g)?;
    Ok((g, p))
}
