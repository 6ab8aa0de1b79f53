//! Exact volume, first moments and barycentre by triangulation.

use toric_futaki::{catalog, fano, geometry};

fn main() {
    for e in catalog::all().iter().filter(|e| e.fan.is_some()) {
        let (_, p) = fano::anticanonical_data(e.fan().unwrap()).unwrap();
        let m = geometry::moments(&p);
        println!(
            "{:<6} volume {:<5} degree {:<3} barycentre {}",
            e.name,
            m.volume.to_string(),
            m.normalized_volume().to_string(),
            m.barycentre
        );
    }

    let p = catalog::entry("x2").unwrap().printed_polytope().unwrap();
    let simplices = geometry::triangulate(&p);
    println!("printed x2 polytope: {} simplices in a pulling triangulation", simplices.len());
}
