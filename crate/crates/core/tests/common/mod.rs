#![allow(dead_code)]

use num_traits::Signed;
use rand::Rng;
use toric_futaki::exact::{self, ratio, QMat, QVec, Rat};
use toric_futaki::futaki::{self, TorusField};
use toric_futaki::geometry::{self, VPolytope};

pub fn rand_points<R: Rng>(rng: &mut R, n: usize) -> Vec<QVec> {
    let count = rng.gen_range(n + 1..=n + 6);
    (0..count).map(|_| QVec::from_ints(&(0..n).map(|_| rng.gen_range(-3..=3)).collect::<Vec<_>>())).collect()
}

/// A random full-dimensional lattice polytope of rank `n`.
pub fn rand_polytope<R: Rng>(rng: &mut R, n: usize) -> (Vec<QVec>, VPolytope) {
    loop {
        let pts = rand_points(rng, n);
        if let Ok(p) = geometry::convex_hull(&pts) {
            return (pts, p);
        }
    }
}

pub fn rand_rat<R: Rng>(rng: &mut R) -> Rat {
    ratio(rng.gen_range(-9..=9), rng.gen_range(1..=7))
}

pub fn rand_field<R: Rng>(rng: &mut R, n: usize) -> TorusField {
    TorusField::new((0..n).map(|_| (rand_rat(rng), rand_rat(rng))).collect())
}

/// Product of random elementary integer matrices, so determinant ±1.
pub fn rand_unimodular<R: Rng>(rng: &mut R, n: usize) -> QMat {
    let mut rows: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..6 {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let c = rng.gen_range(-2..=2);
        for k in 0..n {
            rows[i][k] += c * rows[j][k];
        }
        if rng.gen_bool(0.3) {
            rows[i].iter_mut().for_each(|x| *x = -*x);
        }
    }
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    QMat::from_int_rows(&refs).unwrap()
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Every pulling triangulation sums to the same volume and first moments.
pub fn prop_additivity(p: &VPolytope) -> Result<(), String> {
    let m = geometry::moments(p);
    for apex in 0..p.vertices().len() {
        let mut vol = Rat::from_integer(0.into());
        let mut first = QVec::zeros(p.rank());
        let n1 = Rat::from_integer((p.rank() as i64 + 1).into());
        for s in geometry::triangulate_from(p, apex) {
            let v = s.volume();
            let sum = s.vertices.iter().fold(QVec::zeros(p.rank()), |a, w| a.add(w));
            first = first.add(&sum.scale(&(&v / &n1)));
            vol += v;
        }
        check(vol == m.volume && first == m.first_moments, || format!("apex {apex}: {vol} vs {}", m.volume))?;
    }
    Ok(())
}

pub fn prop_permutation<R: Rng>(rng: &mut R, pts: &[QVec]) -> Result<(), String> {
    use rand::seq::SliceRandom;
    let mut shuffled = pts.to_vec();
    shuffled.shuffle(rng);
    let a = geometry::moments(&geometry::convex_hull(pts).unwrap());
    let b = geometry::moments(&geometry::convex_hull(&shuffled).unwrap());
    check(a == b, || format!("{a:?} vs {b:?}"))
}

/// Under `y ↦ U y + t`, volume is preserved, first moments map to
/// `U m + t·vol`, and the barycentre to `U b + t`.
pub fn prop_unimodular<R: Rng>(rng: &mut R, pts: &[QVec]) -> Result<(), String> {
    let n = pts[0].rank();
    let u = rand_unimodular(rng, n);
    let t = QVec::from_ints(&(0..n).map(|_| rng.gen_range(-5..=5)).collect::<Vec<_>>());
    check(exact::det(&u).unwrap().abs() == Rat::from_integer(1.into()), || "not unimodular".into())?;
    let image: Vec<QVec> = pts.iter().map(|p| u.mul_vec(p).unwrap().add(&t)).collect();
    let a = geometry::moments(&geometry::convex_hull(pts).unwrap());
    let b = geometry::moments(&geometry::convex_hull(&image).unwrap());
    check(a.volume == b.volume, || "volume changed".into())?;
    check(b.first_moments == u.mul_vec(&a.first_moments).unwrap().add(&t.scale(&a.volume)), || "first moments".into())?;
    check(b.barycentre == u.mul_vec(&a.barycentre).unwrap().add(&t), || "barycentre".into())
}

pub fn prop_negation(p: &VPolytope) -> Result<(), String> {
    let a = geometry::moments(p);
    let b = geometry::moments(&p.negated());
    check(a.volume == b.volume && b.first_moments == a.first_moments.neg(), || "negation".into())
}

pub fn prop_linearity<R: Rng>(rng: &mut R, p: &VPolytope) -> Result<(), String> {
    let n = p.rank();
    let m = geometry::moments(p);
    let (eta, zeta) = (rand_field(rng, n), rand_field(rng, n));
    let (alpha, beta) = (rand_rat(rng), rand_rat(rng));
    let lhs = futaki::futaki_from_moments(&m, &eta.combine(&alpha, &zeta, &beta)).unwrap().rational_factor;
    let fe = futaki::futaki_from_moments(&m, &eta).unwrap().rational_factor;
    let fz = futaki::futaki_from_moments(&m, &zeta).unwrap().rational_factor;
    check(lhs == alpha * fe + beta * fz, || "linearity".into())
}
