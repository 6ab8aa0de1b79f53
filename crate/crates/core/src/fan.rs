//! Cones and fans in `N_R ≅ R^n`, with exact checks of the fan axioms,
//! completeness, simpliciality and smoothness.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exact::{self, QMat, QVec};
use crate::subsets;

/// Brute-force facet enumeration is only attempted up to this rank.
pub const MAX_RANK: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanError {
    #[error("rank must be between 1 and {MAX_RANK}, got {0}")]
    BadRank(usize),
    #[error("ray {index} has {found} coordinates, expected {expected}")]
    RayLength { index: usize, expected: usize, found: usize },
    #[error("ray {0} is not primitive")]
    NonPrimitiveRay(usize),
    #[error("ray {0} is zero")]
    ZeroRay(usize),
    #[error("cone {0} is empty")]
    EmptyCone(usize),
    #[error("cone {cone} refers to ray {ray}, but the fan has {count} rays")]
    RayIndexOutOfRange { cone: usize, ray: usize, count: usize },
    #[error("cone contains a line through the origin")]
    NotStronglyConvex,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    /// Indices into the fan's ray table, sorted and deduplicated.
    pub ray_indices: Vec<usize>,
    /// Rank of the span of the generators.
    pub dim: usize,
}

impl Cone {
    pub fn is_simplicial(&self) -> bool {
        self.ray_indices.len() == self.dim
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    rank: usize,
    rays: Vec<QVec>,
    max_cones: Vec<Cone>,
    name: Option<String>,
}

impl Fan {
    /// Structural construction only: lengths and indices are checked, the fan
    /// axioms and primitivity are left to [`validate_fan`].
    pub fn new(rank: usize, rays: Vec<QVec>, cones: Vec<Vec<usize>>) -> Result<Self, FanError> {
        if rank == 0 || rank > MAX_RANK {
            return Err(FanError::BadRank(rank));
        }
        for (index, r) in rays.iter().enumerate() {
            if r.rank() != rank {
                return Err(FanError::RayLength { index, expected: rank, found: r.rank() });
            }
            if !r.is_integral() {
                return Err(FanError::NonPrimitiveRay(index));
            }
            if r.is_zero() {
                return Err(FanError::ZeroRay(index));
            }
        }
        let mut max_cones = Vec::with_capacity(cones.len());
        for (ci, mut idx) in cones.into_iter().enumerate() {
            if idx.is_empty() {
                return Err(FanError::EmptyCone(ci));
            }
            if let Some(&ray) = idx.iter().find(|&&i| i >= rays.len()) {
                return Err(FanError::RayIndexOutOfRange { cone: ci, ray, count: rays.len() });
            }
            idx.sort_unstable();
            idx.dedup();
            let gens: Vec<QVec> = idx.iter().map(|&i| rays[i].clone()).collect();
            let dim = exact::rank_of(&gens);
            max_cones.push(Cone { ray_indices: idx, dim });
        }
        Ok(Fan { rank, rays, max_cones, name: None })
    }

    pub fn from_int_rays(rank: usize, rays: &[Vec<i64>], cones: Vec<Vec<usize>>) -> Result<Self, FanError> {
        Self::new(rank, rays.iter().map(|r| QVec::from_ints(r)).collect(), cones)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[QVec] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[Cone] {
        &self.max_cones
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn generators(&self, c: &Cone) -> Vec<QVec> {
        c.ray_indices.iter().map(|&i| self.rays[i].clone()).collect()
    }

    /// Index of the maximal cone containing `x`, if any.
    pub fn locate(&self, x: &QVec) -> Option<usize> {
        self.max_cones.iter().position(|c| cone_geometry(self, c).is_ok_and(|g| g.contains(x)))
    }
}

/// A facet of a cone: its inward normal and the fan rays lying on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeFacet {
    pub normal: QVec,
    pub rays: Vec<usize>,
}

/// Exact H-representation of a cone: `<u, x> ≥ 0` for every facet normal and
/// `<l, x> = 0` for every equation (the latter only for lower-dimensional cones).
#[derive(Debug, Clone)]
pub struct ConeGeometry {
    pub dim: usize,
    pub facets: Vec<ConeFacet>,
    pub equations: Vec<QVec>,
}

impl ConeGeometry {
    pub fn contains(&self, x: &QVec) -> bool {
        self.equations.iter().all(|l| l.dot(x).is_zero())
            && self.facets.iter().all(|f| !f.normal.dot(x).is_negative())
    }

    fn on_all_facets<'a>(&'a self, x: &'a QVec) -> impl Iterator<Item = &'a ConeFacet> + 'a {
        self.facets.iter().filter(move |f| f.normal.dot(x).is_zero())
    }
}

/// Facets of `c` by enumeration of `(dim-1)`-subsets of generators.
pub fn cone_geometry(f: &Fan, c: &Cone) -> Result<ConeGeometry, FanError> {
    let n = f.rank;
    let gens = f.generators(c);
    let d = c.dim;
    if d == 0 {
        return Ok(ConeGeometry { dim: 0, facets: Vec::new(), equations: Vec::new() });
    }
    let equations = exact::nullspace(&QMat::from_rows(&gens).expect("uniform rank"));
    let mut normals: BTreeSet<QVec> = BTreeSet::new();
    for s in subsets(gens.len(), d - 1) {
        let mut rows: Vec<QVec> = s.iter().map(|&i| gens[i].clone()).collect();
        rows.extend(equations.iter().cloned());
        let u = exact::orthogonal_complement_vector(&rows, n);
        if u.is_zero() {
            continue;
        }
        let vals: Vec<_> = gens.iter().map(|g| u.dot(g)).collect();
        let u = if vals.iter().all(|v| !v.is_negative()) {
            u
        } else if vals.iter().all(|v| !v.is_positive()) {
            u.neg()
        } else {
            continue;
        };
        normals.insert(u.primitive_direction().expect("nonzero"));
    }
    let mut span = normals.iter().cloned().collect::<Vec<_>>();
    span.extend(equations.iter().cloned());
    if exact::rank_of(&span) < n {
        return Err(FanError::NotStronglyConvex);
    }
    let facets = normals
        .into_iter()
        .map(|normal| {
            let rays = c.ray_indices.iter().copied().filter(|&i| normal.dot(&f.rays[i]).is_zero()).collect();
            ConeFacet { normal, rays }
        })
        .collect();
    Ok(ConeGeometry { dim: d, facets, equations })
}

/// Primitive integer inequalities `<u, ·> ≥ 0` cutting out `c`. For a
/// lower-dimensional cone each equation `l` appears as the pair `l, -l`.
pub fn cone_hrep(f: &Fan, c: &Cone) -> Result<Vec<QVec>, FanError> {
    let g = cone_geometry(f, c)?;
    let mut out: Vec<QVec> = g.facets.into_iter().map(|x| x.normal).collect();
    for l in g.equations {
        out.push(l.neg());
        out.push(l);
    }
    Ok(out)
}

/// Lattice index of a simplicial cone: `|det|` for full-dimensional cones,
/// gcd of maximal minors otherwise. `None` for non-simplicial cones.
pub fn cone_multiplicity(f: &Fan, c: &Cone) -> Option<BigInt> {
    if !c.is_simplicial() {
        return None;
    }
    Some(exact::gcd_of_maximal_minors(&f.generators(c)))
}

pub fn is_smooth_cone(f: &Fan, c: &Cone) -> bool {
    cone_multiplicity(f, c).is_some_and(|m| m.is_one())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    DuplicateRay { rays: (usize, usize) },
    UnusedRay { ray: usize },
    DuplicateCone { cones: (usize, usize) },
    NotStronglyConvex { cone: usize },
    NonExtremalGenerator { cone: usize, ray: usize },
    /// `σ₁ ∩ σ₂` is not a common face of the two cones.
    BadIntersection { cones: (usize, usize) },
    LowerDimensionalCone { cone: usize, dim: usize },
    /// A facet of a maximal cone that is not shared by exactly two maximal cones.
    UnpairedFacet { cone: usize, facet_rays: Vec<usize>, shared_by: Vec<usize> },
    SingularCone { cone: usize, multiplicity: Option<String> },
}

impl Violation {
    /// Whether the finding breaks the fan axioms (as opposed to completeness or smoothness).
    pub fn is_axiom_violation(&self) -> bool {
        matches!(
            self,
            Violation::DuplicateRay { .. }
                | Violation::NotStronglyConvex { .. }
                | Violation::NonExtremalGenerator { .. }
                | Violation::BadIntersection { .. }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub axioms_ok: bool,
    pub complete: bool,
    pub simplicial: bool,
    pub smooth: bool,
    pub violations: Vec<Violation>,
}

/// Extreme rays of the intersection of two pointed cones given in H-form.
fn intersection_rays(n: usize, a: &ConeGeometry, b: &ConeGeometry) -> Vec<QVec> {
    let mut constraints: Vec<QVec> = Vec::new();
    for g in [a, b] {
        constraints.extend(g.facets.iter().map(|f| f.normal.clone()));
        constraints.extend(g.equations.iter().cloned());
    }
    let inside = |x: &QVec| a.contains(x) && b.contains(x);
    let mut out: BTreeSet<QVec> = BTreeSet::new();
    for s in subsets(constraints.len(), n - 1) {
        let rows: Vec<QVec> = s.iter().map(|&i| constraints[i].clone()).collect();
        let r = exact::orthogonal_complement_vector(&rows, n);
        if r.is_zero() {
            continue;
        }
        for cand in [r.clone(), r.neg()] {
            if inside(&cand) {
                out.insert(cand.primitive_direction().expect("nonzero"));
            }
        }
    }
    out.into_iter().collect()
}

/// Whether the cone spanned by `common` rays is a face of the cone `c`.
fn is_face(f: &Fan, c: &Cone, g: &ConeGeometry, common: &[usize]) -> bool {
    let supporting: Vec<&ConeFacet> =
        g.facets.iter().filter(|fc| common.iter().all(|&i| fc.normal.dot(&f.rays[i]).is_zero())).collect();
    let on_face: Vec<usize> = c
        .ray_indices
        .iter()
        .copied()
        .filter(|&i| supporting.iter().all(|fc| fc.normal.dot(&f.rays[i]).is_zero()))
        .collect();
    on_face == common
}

fn common_face_ok(f: &Fan, (ca, ga): (&Cone, &ConeGeometry), (cb, gb): (&Cone, &ConeGeometry)) -> bool {
    let common: Vec<usize> = ca.ray_indices.iter().copied().filter(|i| cb.ray_indices.contains(i)).collect();
    let common_dirs: Vec<&QVec> = common.iter().map(|&i| &f.rays[i]).collect();
    let inter = intersection_rays(f.rank, ga, gb);
    inter.iter().all(|r| common_dirs.contains(&r)) && is_face(f, ca, ga, &common) && is_face(f, cb, gb, &common)
}

/// Checks every fan axiom on the maximal cones, then completeness by facet
/// pairing, simpliciality and smoothness.
pub fn validate_fan(f: &Fan) -> Result<ValidationReport, FanError> {
    for (i, r) in f.rays.iter().enumerate() {
        let p = exact::primitive(r).map_err(|_| FanError::ZeroRay(i))?;
        if &p != r {
            return Err(FanError::NonPrimitiveRay(i));
        }
    }
    let mut violations = Vec::new();
    for (a, b) in pairs(f.rays.len()) {
        if f.rays[a] == f.rays[b] {
            violations.push(Violation::DuplicateRay { rays: (a, b) });
        }
    }
    for r in 0..f.rays.len() {
        if !f.max_cones.iter().any(|c| c.ray_indices.contains(&r)) {
            violations.push(Violation::UnusedRay { ray: r });
        }
    }

    // identical index sets are one cone listed twice
    let mut distinct: Vec<usize> = Vec::new();
    for (i, c) in f.max_cones.iter().enumerate() {
        match distinct.iter().find(|&&j| f.max_cones[j].ray_indices == c.ray_indices) {
            Some(&j) => violations.push(Violation::DuplicateCone { cones: (j, i) }),
            None => distinct.push(i),
        }
    }

    let mut geoms: BTreeMap<usize, ConeGeometry> = BTreeMap::new();
    for &i in &distinct {
        let c = &f.max_cones[i];
        match cone_geometry(f, c) {
            Ok(g) => {
                for &r in &c.ray_indices {
                    let mut rows: Vec<QVec> = g.on_all_facets(&f.rays[r]).map(|fc| fc.normal.clone()).collect();
                    rows.extend(g.equations.iter().cloned());
                    if exact::rank_of(&rows) != f.rank - 1 {
                        violations.push(Violation::NonExtremalGenerator { cone: i, ray: r });
                    }
                }
                geoms.insert(i, g);
            }
            Err(_) => violations.push(Violation::NotStronglyConvex { cone: i }),
        }
    }

    for (x, y) in pairs(distinct.len()) {
        let (i, j) = (distinct[x], distinct[y]);
        let (Some(gi), Some(gj)) = (geoms.get(&i), geoms.get(&j)) else { continue };
        if !common_face_ok(f, (&f.max_cones[i], gi), (&f.max_cones[j], gj)) {
            violations.push(Violation::BadIntersection { cones: (i, j) });
        }
    }
    let axioms_ok = !violations.iter().any(Violation::is_axiom_violation);

    let complete = if axioms_ok {
        let (ok, v) = facet_pairing(f, &distinct, &geoms);
        violations.extend(v);
        ok
    } else {
        false
    };

    let simplicial = f.max_cones.iter().all(Cone::is_simplicial);
    let mut smooth = true;
    for &i in &distinct {
        let c = &f.max_cones[i];
        if !is_smooth_cone(f, c) {
            smooth = false;
            violations.push(Violation::SingularCone {
                cone: i,
                multiplicity: cone_multiplicity(f, c).map(|m| m.to_string()),
            });
        }
    }
    Ok(ValidationReport { axioms_ok, complete, simplicial, smooth, violations })
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |a| (a + 1..n).map(move |b| (a, b)))
}

fn facet_pairing(f: &Fan, distinct: &[usize], geoms: &BTreeMap<usize, ConeGeometry>) -> (bool, Vec<Violation>) {
    let mut violations = Vec::new();
    for &i in distinct {
        let c = &f.max_cones[i];
        if c.dim != f.rank {
            violations.push(Violation::LowerDimensionalCone { cone: i, dim: c.dim });
        }
    }
    if !violations.is_empty() {
        return (false, violations);
    }
    let mut owners: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (&i, g) in geoms {
        for fc in &g.facets {
            owners.entry(fc.rays.clone()).or_default().push(i);
        }
    }
    for (&i, g) in geoms {
        for fc in &g.facets {
            let shared_by = &owners[&fc.rays];
            if shared_by.len() != 2 {
                violations.push(Violation::UnpairedFacet { cone: i, facet_rays: fc.rays.clone(), shared_by: shared_by.clone() });
            }
        }
    }
    (violations.is_empty(), violations)
}

/// Facet-pairing completeness test. Meaningful only when the fan axioms hold.
pub fn is_complete(f: &Fan) -> bool {
    validate_fan(f).is_ok_and(|r| r.complete)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn p3() -> Fan {
        Fan::from_int_rays(
            3,
            &[vec![-1, -1, -1], vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
            vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
        )
        .unwrap()
    }

    #[test]
    fn p3_is_complete_and_smooth() {
        let r = validate_fan(&p3()).unwrap();
        assert!(r.axioms_ok && r.complete && r.simplicial && r.smooth, "{r:?}");
        assert!(r.violations.is_empty());
        assert!(is_complete(&p3()));
    }

    #[test]
    fn p3_minus_a_cone_is_incomplete() {
        let f = Fan::from_int_rays(
            3,
            &[vec![-1, -1, -1], vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
            vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3]],
        )
        .unwrap();
        let r = validate_fan(&f).unwrap();
        assert!(r.axioms_ok);
        assert!(!r.complete);
        let unpaired = r.violations.iter().filter(|v| matches!(v, Violation::UnpairedFacet { .. })).count();
        assert_eq!(unpaired, 3);
    }

    #[test]
    fn single_planar_cone() {
        let f = Fan::from_int_rays(2, &[vec![1, 0], vec![0, 1]], vec![vec![0, 1]]).unwrap();
        let r = validate_fan(&f).unwrap();
        assert!(r.axioms_ok && !r.complete);
    }

    #[test]
    fn smoothness_by_determinant() {
        let f = Fan::from_int_rays(
            3,
            &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 1, 1], vec![-1, -1, -1], vec![2, 1, 0], vec![0, 0, 1]],
            vec![vec![0, 1, 2], vec![3, 1, 4], vec![0, 1, 5]],
        )
        .unwrap();
        assert!(is_smooth_cone(&f, &f.max_cones()[0]));
        assert!(!is_smooth_cone(&f, &f.max_cones()[1]));
        assert_eq!(cone_multiplicity(&f, &f.max_cones()[1]), Some(BigInt::from(2)));
        assert!(is_smooth_cone(&f, &f.max_cones()[2]));
    }

    #[test]
    fn lower_dimensional_smoothness_uses_minors() {
        let f = Fan::from_int_rays(3, &[vec![1, 0, 0], vec![1, 2, 0], vec![0, 1, 0]], vec![vec![0, 1], vec![0, 2]]).unwrap();
        assert!(!is_smooth_cone(&f, &f.max_cones()[0]));
        assert!(is_smooth_cone(&f, &f.max_cones()[1]));
    }

    #[test]
    fn non_simplicial_is_not_smooth() {
        let f = Fan::from_int_rays(3, &[vec![1, 0, 0], vec![1, 1, 0], vec![1, 0, 1], vec![1, 1, 1]], vec![vec![0, 1, 2, 3]])
            .unwrap();
        assert!(!is_smooth_cone(&f, &f.max_cones()[0]));
    }

    #[test]
    fn hrep_examples() {
        let f = Fan::from_int_rays(3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], vec![vec![0, 1, 2]]).unwrap();
        let mut h = cone_hrep(&f, &f.max_cones()[0]).unwrap();
        h.sort();
        assert_eq!(h, vec![QVec::from_ints(&[0, 0, 1]), QVec::from_ints(&[0, 1, 0]), QVec::from_ints(&[1, 0, 0])]);

        let f = Fan::from_int_rays(2, &[vec![1, 0], vec![1, 2]], vec![vec![0, 1]]).unwrap();
        let mut h = cone_hrep(&f, &f.max_cones()[0]).unwrap();
        h.sort();
        assert_eq!(h, vec![QVec::from_ints(&[0, 1]), QVec::from_ints(&[2, -1])]);

        let f = Fan::from_int_rays(2, &[vec![1, 0], vec![-1, 0], vec![0, 1]], vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(cone_hrep(&f, &f.max_cones()[0]), Err(FanError::NotStronglyConvex));
    }

    #[test]
    fn lower_dimensional_hrep_has_equation_pairs() {
        let f = Fan::from_int_rays(3, &[vec![1, 0, 0], vec![0, 1, 0]], vec![vec![0, 1]]).unwrap();
        let h = cone_hrep(&f, &f.max_cones()[0]).unwrap();
        assert_eq!(h.len(), 4);
        assert!(h.contains(&QVec::from_ints(&[0, 0, 1])) && h.contains(&QVec::from_ints(&[0, 0, -1])));
    }

    #[test]
    fn non_primitive_ray_is_rejected() {
        let f = Fan::from_int_rays(2, &[vec![2, 0], vec![0, 1]], vec![vec![0, 1]]).unwrap();
        assert_eq!(validate_fan(&f), Err(FanError::NonPrimitiveRay(0)));
    }

    #[test]
    fn overlapping_cones_violate_axioms() {
        // cone(e1, e1+e2) sits inside cone(e1, e2) without being a face of it
        let f = Fan::from_int_rays(2, &[vec![1, 0], vec![0, 1], vec![1, 1]], vec![vec![0, 1], vec![0, 2]]).unwrap();
        let r = validate_fan(&f).unwrap();
        assert!(!r.axioms_ok);
        assert!(r.violations.contains(&Violation::BadIntersection { cones: (0, 1) }));
    }

    #[test]
    fn crossing_cones_violate_axioms() {
        // two planar cones that cross in a region with no common rays
        let f = Fan::from_int_rays(2, &[vec![1, 0], vec![1, 2], vec![2, 1], vec![0, 1]], vec![vec![0, 1], vec![2, 3]]).unwrap();
        let r = validate_fan(&f).unwrap();
        assert!(!r.axioms_ok);
    }

    #[test]
    fn non_extremal_generator_flagged() {
        let f = Fan::from_int_rays(2, &[vec![1, 0], vec![1, 1], vec![0, 1]], vec![vec![0, 1, 2]]).unwrap();
        let r = validate_fan(&f).unwrap();
        assert!(r.violations.contains(&Violation::NonExtremalGenerator { cone: 0, ray: 1 }));
    }

    #[test]
    fn locate_points() {
        let f = p3();
        assert_eq!(f.locate(&QVec::from_ints(&[1, 1, 1])), Some(3));
        assert!(f.locate(&QVec::from_ints(&[-5, 1, 1])).is_some());
    }
}
