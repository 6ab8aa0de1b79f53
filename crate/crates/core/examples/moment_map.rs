//! Anticanonical embedding, the moment map `μ = ½∇f`, and its self-test.

use toric_futaki::catalog;
use toric_futaki::futaki::{self, FD_STEP};

fn main() {
    for name in ["p1", "p2", "bl1p2", "p3", "x2"] {
        let f = catalog::entry(name).unwrap().fan().unwrap();
        let e = futaki::build_embedding(f).unwrap();
        let worst = futaki::gradient_selftest(&e, 100, 7);
        println!("{name:<6} k = {} N = {:<3} max |df - 2mu| = {worst:.2e} (step {FD_STEP})", e.k, e.ambient_dim());
    }

    let e = futaki::build_embedding(catalog::entry("p1").unwrap().fan().unwrap()).unwrap();
    for x in [-5.0, -1.0, 0.0, 1.0, 5.0] {
        println!("p1: mu({x:>4}) = {:+.6}", futaki::moment_map(&e, &[x])[0]);
    }
}
