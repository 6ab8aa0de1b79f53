//! The three toric degenerations of the degree-38 threefold: printed data,
//! reconciled fans, barycentres and the torus Futaki invariant.

use toric_futaki::catalog;
use toric_futaki::cli::{compare_barycentre, BarycentreMatch};
use toric_futaki::{fan, fano, futaki, geometry};

fn main() {
    for name in ["x1", "x2", "x3"] {
        let e = catalog::entry(name).unwrap();
        println!("== {name}: {}", e.description);

        let printed = e.printed_fan.as_ref().unwrap();
        let r = fan::validate_fan(printed).unwrap();
        println!("printed fan: {} cones, complete {}", printed.max_cones().len(), r.complete);

        let f = e.fan().unwrap();
        let (g, p) = fano::anticanonical_data(f).unwrap();
        let b = fano::compare_k_sigma(&g, e.printed_vertices.as_ref().unwrap());
        println!("reconciled fan: {} cones, Gorenstein index {}", f.max_cones().len(), g.index);
        println!("  k_sigma vs printed list: {} matched", b.matched);
        for (c, k) in &b.unmatched_cones {
            println!("    cone {c} has k_sigma {k}, absent from the printed list");
        }
        for r in &b.unmatched_reference {
            println!("    printed point {r} has no cone");
        }

        let expected = e.expected.as_ref().unwrap();
        for (label, poly) in [("fan", p), ("printed list", e.anticanonical_from_vertices().unwrap())] {
            let m = geometry::moments(&poly);
            let verdict = compare_barycentre(&m, expected);
            println!(
                "  via {label:<12} degree {:<3} barycentre {} -> {:?}",
                m.normalized_volume().to_string(),
                m.barycentre,
                verdict
            );
            if verdict == BarycentreMatch::FirstMomentsOverDegree {
                println!("    printed value {} is first moments / degree", expected.barycentre);
            }
        }

        let report = futaki::analyze_fan(f, &[]).unwrap();
        println!("  Re F(t_s d/dt_s) = (2pi)^3 * {}", report.re_futaki_basis_factor);
    }
}
