use num_traits::Zero;
use serde::Serialize;

use super::{triangulate, VPolytope};
use crate::exact::{self, QVec, Rat};

/// Volume, first moments `∫ y_s dy` and barycentre of a polytope, all exact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MomentData {
    #[serde(with = "exact::rat_string")]
    pub volume: Rat,
    #[serde(with = "exact::rat_vec_string")]
    pub first_moments: QVec,
    #[serde(with = "exact::rat_vec_string")]
    pub barycentre: QVec,
}

impl MomentData {
    /// `n! · volume`, the normalized lattice volume.
    pub fn normalized_volume(&self) -> Rat {
        let n = self.first_moments.rank() as u64;
        let fact: u64 = (1..=n).product();
        &self.volume * Rat::from_integer(fact.into())
    }
}

/// Exact moments by summing over a triangulation. On a simplex the first
/// moment is the volume times the vertex mean.
pub fn moments(p: &VPolytope) -> MomentData {
    let n = p.rank;
    let mut volume = Rat::zero();
    let mut first = QVec::zeros(n);
    let n1 = Rat::from_integer((n as u64 + 1).into());
    for s in triangulate(p) {
        let v = s.volume();
        let mut sum = QVec::zeros(n);
        for w in &s.vertices {
            sum = sum.add(w);
        }
        first = first.add(&sum.scale(&(&v / &n1)));
        volume += v;
    }
    let barycentre = first.scale(&(Rat::from_integer(1.into()) / &volume));
    MomentData { volume, first_moments: first, barycentre }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};
    use crate::geometry::convex_hull;

    fn hull(pts: &[[i64; 3]]) -> VPolytope {
        convex_hull(&pts.iter().map(|v| QVec::from_ints(v)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn p3_anticanonical_is_centred() {
        let m = moments(&hull(&[[3, -1, -1], [-1, 3, -1], [-1, -1, 3], [-1, -1, -1]]));
        assert!(m.barycentre.is_zero());
        assert_eq!(m.volume, ratio(64, 6));
        assert_eq!(m.normalized_volume(), rat(64));
    }

    #[test]
    fn unit_cube() {
        let pts: Vec<[i64; 3]> = (0..8).map(|i| [i & 1, (i >> 1) & 1, (i >> 2) & 1]).collect();
        let m = moments(&hull(&pts));
        assert_eq!(m.volume, rat(1));
        assert_eq!(m.barycentre, QVec::new(vec![ratio(1, 2); 3]));
    }

    /// Shoelace area and centroid of a convex polygon listed in cyclic order.
    fn shoelace(poly: &[(i64, i64)]) -> (Rat, Rat, Rat) {
        let (mut a, mut cx, mut cy) = (Rat::zero(), Rat::zero(), Rat::zero());
        for i in 0..poly.len() {
            let (x0, y0) = poly[i];
            let (x1, y1) = poly[(i + 1) % poly.len()];
            let cross = rat(x0 * y1 - x1 * y0);
            a += &cross;
            cx += rat(x0 + x1) * &cross;
            cy += rat(y0 + y1) * &cross;
        }
        let area = &a / rat(2);
        (area.clone(), cx / (rat(6) * &area), cy / (rat(6) * &area))
    }

    #[test]
    fn polygon_matches_shoelace() {
        let poly = [(-1, 0), (0, -1), (2, -1), (-1, 2)];
        let (area, cx, cy) = shoelace(&poly);
        let p = convex_hull(&poly.iter().map(|&(x, y)| QVec::from_ints(&[x, y])).collect::<Vec<_>>()).unwrap();
        let m = moments(&p);
        assert_eq!(m.volume, area);
        assert_eq!(m.barycentre, QVec::new(vec![cx, cy]));
        assert_eq!(m.barycentre, QVec::new(vec![ratio(1, 12), ratio(1, 12)]));
    }

    #[test]
    fn barycentre_is_interior() {
        let p = hull(&[[1, 1, 0], [1, 0, 1], [-1, 0, 1], [0, 1, -2], [1, 1, -2], [0, -1, 0], [-2, 1, 0], [1, -2, 1]]);
        let m = moments(&p);
        assert!(p.strictly_contains(&m.barycentre));
        assert_eq!(m.barycentre.scale(&m.volume), m.first_moments);
    }
}
