//! Seeded Monte-Carlo moments as an independent check on the exact values.

use toric_futaki::cli;
use toric_futaki::{catalog, geometry};

fn main() {
    let seed = cli::mc_seed().unwrap();
    for name in ["bl1p2", "x1", "x2", "x3"] {
        let e = catalog::entry(name).unwrap();
        let p = toric_futaki::fano::anticanonical_data(e.fan().unwrap()).unwrap().1;
        let exact = geometry::moments(&p);
        let mc = geometry::mc_moments(&p, seed, 1_000_000).unwrap();
        let z: Vec<String> = exact
            .barycentre
            .to_f64()
            .iter()
            .zip(&mc.barycentre)
            .zip(&mc.barycentre_stderr)
            .map(|((x, y), s)| format!("{:.2}", (x - y) / s))
            .collect();
        println!("{name:<6} exact {} mc volume {:.4} +- {:.4}, z = [{}]", exact.barycentre, mc.volume, mc.volume_stderr, z.join(", "));
    }
}
