//! Gorenstein data `k_σ`, the almost Fano test, `P_{-K}` and its lattice points.

use num_bigint::BigInt;
use toric_futaki::fano::{self, TCartierDivisor};
use toric_futaki::{catalog, Fan};

fn main() {
    for name in ["p2", "p3", "x1", "x2", "x3"] {
        let f = catalog::entry(name).unwrap().fan().unwrap();
        let g = fano::gorenstein_data(f).unwrap();
        let p = fano::anticanonical_polytope(&g).unwrap();
        let h = fano::divisor_polytope(f, &TCartierDivisor::anticanonical_multiple(f, &BigInt::from(1))).unwrap();
        println!(
            "{name}: index {}, {} vertices, {} facets, {} lattice points",
            g.index,
            p.vertices().len(),
            p.facets().len(),
            h.lattice_points().unwrap().len()
        );
    }

    // Weighted projective plane P(1,1,3): Q-Gorenstein of index 3.
    let w = Fan::from_int_rays(2, &[vec![1, 0], vec![0, 1], vec![-1, -3]], vec![vec![0, 1], vec![1, 2], vec![2, 0]]).unwrap();
    let g = fano::gorenstein_data(&w).unwrap();
    println!("P(1,1,3): index {}, k_sigma {:?}", g.index, g.k_sigma.iter().map(ToString::to_string).collect::<Vec<_>>());

    // Hirzebruch F_3: every -k_σ is a vertex, yet -K is not convex on the fan.
    let f3 = Fan::from_int_rays(2, &[vec![1, 0], vec![0, 1], vec![-1, 3], vec![0, -1]], vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]])
        .unwrap();
    let g = fano::gorenstein_data(&f3).unwrap();
    println!("F_3: {:?}", fano::is_almost_fano(&f3, &g));
}
