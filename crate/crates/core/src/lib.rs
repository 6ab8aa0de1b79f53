//! Exact anticanonical polytopes, barycentres and the torus part of the
//! generalized Futaki invariant for almost Fano toric varieties.
//!
//! The pipeline runs fan → Gorenstein data (`k_σ`) → anticanonical polytope
//! `conv{-k_σ}` → exact moments → `Re F`. Every step before the final
//! `(2π)^n` scaling is exact rational arithmetic.
//!
//! ```
//! use toric_futaki::{catalog, futaki};
//!
//! let p3 = catalog::entry("p3").unwrap();
//! let report = futaki::analyze_fan(p3.fan().unwrap(), &[]).unwrap();
//! assert!(report.moments.barycentre.is_zero());
//! ```

pub mod catalog;
pub mod cli;
pub mod exact;
pub mod fan;
pub mod fano;
pub mod futaki;
pub mod geometry;
pub mod io;

pub use exact::{QMat, QVec, Rat};
pub use fan::{Cone, Fan, ValidationReport};
pub use fano::{GorensteinData, HPolytope, TCartierDivisor};
pub use futaki::{EmbeddingData, FutakiReport, TorusField};
pub use geometry::{MomentData, Simplex, VPolytope};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] exact::LinalgError),
    #[error(transparent)]
    Fan(#[from] fan::FanError),
    #[error(transparent)]
    Fano(#[from] fano::FanoError),
    #[error(transparent)]
    Geometry(#[from] geometry::GeometryError),
    #[error(transparent)]
    Futaki(#[from] futaki::FutakiError),
    #[error(transparent)]
    Io(#[from] io::IoError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// All `k`-element subsets of `0..n`, in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = (k <= n).then(|| (0..k).collect());
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let c = cur.as_mut().unwrap();
        let mut i = k;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if c[i] < n - k + i {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}
