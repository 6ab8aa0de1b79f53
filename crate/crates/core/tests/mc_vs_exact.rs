//! The seeded Monte-Carlo oracle agrees with the exact moments on every catalog polytope.

use toric_futaki::{catalog, fano, geometry};

const SAMPLES: u64 = 1_000_000;
const SIGMA: f64 = 3.0;

#[test]
fn catalog_polytopes() {
    let mut polys = Vec::new();
    for e in catalog::all() {
        if let Ok((_, p)) = fano::anticanonical_data(e.fan().unwrap()) {
            polys.push((e.name, p));
        }
        if let Some(p) = e.printed_polytope() {
            polys.push((e.name, p));
        }
    }
    assert!(polys.len() >= 11);
    for (name, p) in polys {
        let exact = geometry::moments(&p);
        let est = geometry::mc_moments(&p, 42, SAMPLES).unwrap();
        let zv = (toric_futaki::exact::rat_to_f64(&exact.volume) - est.volume).abs() / est.volume_stderr.max(1e-12);
        assert!(zv <= SIGMA, "{name}: volume off by {zv} sigma");
        for (s, x) in exact.barycentre.to_f64().iter().enumerate() {
            let err = est.barycentre_stderr[s].max(1e-12);
            let z = (x - est.barycentre[s]).abs() / err;
            assert!(z <= SIGMA, "{name}: barycentre[{s}] off by {z} sigma");
        }
    }
}
