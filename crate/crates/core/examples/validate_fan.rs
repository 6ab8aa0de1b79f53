//! Fan validation: axioms, completeness, simpliciality and smoothness.

use toric_futaki::{catalog, fan};

fn main() {
    for name in ["p3", "bl1p2", "x2", "x1-printed", "x2-printed"] {
        let f = catalog::entry(name).unwrap().fan().unwrap();
        let r = fan::validate_fan(f).unwrap();
        println!(
            "{name:<11} axioms {} complete {} simplicial {} smooth {}",
            r.axioms_ok, r.complete, r.simplicial, r.smooth
        );
        for v in r.violations.iter().filter(|v| !matches!(v, fan::Violation::SingularCone { .. })) {
            println!("    {v:?}");
        }
    }

    // Two cones that overlap without meeting in a common face.
    let bad = toric_futaki::Fan::from_int_rays(2, &[vec![1, 0], vec![1, 2], vec![0, 1], vec![2, 1]], vec![vec![0, 1], vec![2, 3]])
        .unwrap();
    let r = fan::validate_fan(&bad).unwrap();
    println!("crossing cones: axioms {} {:?}", r.axioms_ok, r.violations.iter().find(|v| v.is_axiom_violation()));
}
