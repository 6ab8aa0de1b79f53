use rand::RngCore;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{GeometryError, VPolytope};
use crate::exact;

/// Samples per parallel chunk. Results do not depend on it: sample `i` always
/// reads the same keystream words and all accumulators are integers.
const CHUNK: u64 = 1 << 14;

/// Grid resolution per axis: coordinates are `lo + w·(2k+1)/2^33`, `k < 2^32`.
const GRID_BITS: i32 = 33;

/// Monte-Carlo estimate of volume, first moments and barycentre with standard errors.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McEstimate {
    pub samples: u64,
    pub accepted: u64,
    pub volume: f64,
    pub volume_stderr: f64,
    pub first_moments: Vec<f64>,
    pub first_moments_stderr: Vec<f64>,
    pub barycentre: Vec<f64>,
    pub barycentre_stderr: Vec<f64>,
}

#[derive(Clone)]
struct Tally {
    accepted: u64,
    /// Σ (2k+1) over accepted samples, per axis
    sum: Vec<u128>,
    /// Σ (2k+1)² over accepted samples, per axis
    sum_sq: Vec<u128>,
}

impl Tally {
    fn new(n: usize) -> Self {
        Tally { accepted: 0, sum: vec![0; n], sum_sq: vec![0; n] }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.accepted += other.accepted;
        for i in 0..self.sum.len() {
            self.sum[i] += other.sum[i];
            self.sum_sq[i] += other.sum_sq[i];
        }
        self
    }
}

/// Rejection sampling in the exact bounding box with a counter-based ChaCha stream.
///
/// Identical `(seed, samples)` give bit-identical estimates on any thread count.
pub fn mc_moments(p: &VPolytope, seed: u64, samples: u64) -> Result<McEstimate, GeometryError> {
    let n = p.rank;
    let (lo, hi) = p.bounding_box();
    let lo = lo.to_f64();
    let width: Vec<f64> = hi.to_f64().iter().zip(&lo).map(|(h, l)| h - l).collect();
    let facets: Vec<(Vec<f64>, f64)> =
        p.facets.iter().map(|f| (f.normal.to_f64(), exact::rat_to_f64(&f.offset))).collect();
    let scale = 2f64.powi(-GRID_BITS);

    let base = ChaCha8Rng::seed_from_u64(seed);
    let chunks = samples.div_ceil(CHUNK);
    let tally = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = base.clone();
            let start = c * CHUNK;
            let end = (start + CHUNK).min(samples);
            rng.set_word_pos(start as u128 * n as u128);
            let mut t = Tally::new(n);
            let mut ks = vec![0u128; n];
            let mut y = vec![0f64; n];
            for _ in start..end {
                for i in 0..n {
                    ks[i] = 2 * rng.next_u32() as u128 + 1;
                    y[i] = lo[i] + width[i] * (ks[i] as f64 * scale);
                }
                let inside = facets
                    .iter()
                    .all(|(a, b)| a.iter().zip(&y).map(|(x, z)| x * z).sum::<f64>() + b >= 0.0);
                if inside {
                    t.accepted += 1;
                    for i in 0..n {
                        t.sum[i] += ks[i];
                        t.sum_sq[i] += ks[i] * ks[i];
                    }
                }
            }
            t
        })
        .reduce(|| Tally::new(n), Tally::merge);

    if tally.accepted == 0 {
        return Err(GeometryError::NoAcceptedSamples(samples));
    }
    let big_n = samples as f64;
    let a = tally.accepted as f64;
    let box_volume: f64 = width.iter().product();
    let frac = a / big_n;
    let volume = box_volume * frac;
    let volume_stderr = box_volume * (frac * (1.0 - frac) / big_n).sqrt();

    let mut first_moments = Vec::with_capacity(n);
    let mut first_moments_stderr = Vec::with_capacity(n);
    let mut barycentre = Vec::with_capacity(n);
    let mut barycentre_stderr = Vec::with_capacity(n);
    for i in 0..n {
        // Σ y and Σ y² over accepted samples
        let t1 = tally.sum[i] as f64 * scale;
        let t2 = tally.sum_sq[i] as f64 * scale * scale;
        let (l, w) = (lo[i], width[i]);
        let sy = a * l + w * t1;
        let syy = a * l * l + 2.0 * l * w * t1 + w * w * t2;

        let mean_z = sy / big_n;
        let var_z = (syy / big_n - mean_z * mean_z).max(0.0);
        first_moments.push(box_volume * mean_z);
        first_moments_stderr.push(box_volume * (var_z / big_n).sqrt());

        let mean_y = sy / a;
        let var_y = (syy / a - mean_y * mean_y).max(0.0);
        barycentre.push(mean_y);
        barycentre_stderr.push((var_y / a).sqrt());
    }
    Ok(McEstimate {
        samples,
        accepted: tally.accepted,
        volume,
        volume_stderr,
        first_moments,
        first_moments_stderr,
        barycentre,
        barycentre_stderr,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::QVec;
    use crate::geometry::convex_hull;

    fn hull(pts: &[&[i64]]) -> VPolytope {
        convex_hull(&pts.iter().map(|v| QVec::from_ints(v)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn cube_is_exact() {
        let pts: Vec<Vec<i64>> = (0..8).map(|i| vec![i & 1, (i >> 1) & 1, (i >> 2) & 1]).collect();
        let refs: Vec<&[i64]> = pts.iter().map(|v| v.as_slice()).collect();
        let e = mc_moments(&hull(&refs), 7, 100_000).unwrap();
        assert_eq!(e.volume, 1.0);
        assert_eq!(e.volume_stderr, 0.0);
        assert_eq!(e.accepted, 100_000);
    }

    #[test]
    fn unit_simplex_volume_within_three_sigma() {
        let p = hull(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let e = mc_moments(&p, 42, 1_000_000).unwrap();
        assert!((e.volume - 1.0 / 6.0).abs() <= 3.0 * e.volume_stderr, "{e:?}");
        for s in 0..3 {
            assert!((e.barycentre[s] - 0.25).abs() <= 3.0 * e.barycentre_stderr[s]);
            assert!((e.first_moments[s] - 1.0 / 24.0).abs() <= 3.0 * e.first_moments_stderr[s]);
        }
    }

    #[test]
    fn deterministic_across_thread_pools() {
        let p = hull(&[&[0, 0], &[3, 0], &[0, 2]]);
        let a = mc_moments(&p, 11, 50_001).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| mc_moments(&p, 11, 50_001).unwrap());
        assert_eq!(a, b);
        let c = mc_moments(&p, 12, 50_001).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn zero_samples_is_an_error() {
        let p = hull(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(mc_moments(&p, 1, 0), Err(GeometryError::NoAcceptedSamples(0)));
    }
}
