use num_bigint::BigInt;
use toric_futaki::exact::{QVec, Rat};
use toric_futaki::fan::{self, Violation};
use toric_futaki::fano::{self, TCartierDivisor};
use toric_futaki::{catalog, geometry};

#[test]
fn facet_normals_vanish_exactly_on_facet_generators() {
    for e in catalog::all() {
        let f = e.fan().unwrap();
        if !fan::validate_fan(f).unwrap().axioms_ok {
            continue;
        }
        for c in f.max_cones() {
            let g = fan::cone_geometry(f, c).unwrap();
            for facet in &g.facets {
                for &i in &c.ray_indices {
                    let v = facet.normal.dot(&f.rays()[i]);
                    assert!(v >= Rat::from_integer(0.into()), "{}", e.name);
                    assert_eq!(v == Rat::from_integer(0.into()), facet.rays.contains(&i), "{}", e.name);
                }
            }
        }
    }
}

#[test]
fn smoothness_classification() {
    let p3 = fan::validate_fan(catalog::entry("p3").unwrap().fan().unwrap()).unwrap();
    assert!(p3.smooth);
    for name in ["x1", "x2", "x3", "x1-printed", "x2-printed", "x3-printed"] {
        let r = fan::validate_fan(catalog::entry(name).unwrap().fan().unwrap()).unwrap();
        assert!(r.violations.iter().any(|v| matches!(v, Violation::SingularCone { .. })), "{name}");
    }
}

#[test]
fn divisor_polytope_of_index_multiple() {
    for e in catalog::all().iter().filter(|e| e.fan.is_some()) {
        let f = e.fan().unwrap();
        let (g, p) = fano::anticanonical_data(f).unwrap();
        let h = fano::divisor_polytope(f, &TCartierDivisor::anticanonical_multiple(f, &g.index)).unwrap();
        let mut expected: Vec<QVec> = p.dilated(&Rat::from_integer(g.index.clone())).vertices().to_vec();
        let mut got = h.vertices().unwrap();
        expected.sort();
        got.sort();
        assert_eq!(got, expected, "{}", e.name);
    }
    let one = BigInt::from(1);
    let f = catalog::entry("p2").unwrap().fan().unwrap();
    let h = fano::divisor_polytope(f, &TCartierDivisor::anticanonical_multiple(f, &one)).unwrap();
    assert_eq!(h.lattice_points().unwrap().len(), 10);
}

#[test]
fn x2_lattice_points_are_permutation_closed() {
    let f = catalog::entry("x2").unwrap().fan().unwrap();
    let h = fano::divisor_polytope(f, &TCartierDivisor::anticanonical_multiple(f, &BigInt::from(1))).unwrap();
    let pts = h.lattice_points().unwrap();
    assert_eq!(pts.len(), 22);
    for perm in [[1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0]] {
        for p in &pts {
            let q: QVec = perm.iter().map(|&i| p[i].clone()).collect();
            assert!(pts.contains(&q));
        }
    }
}

#[test]
fn printed_lists_are_negated_polytopes() {
    for name in ["x2", "x3"] {
        let e = catalog::entry(name).unwrap();
        let (_, pk) = fano::anticanonical_data(e.fan().unwrap()).unwrap();
        let printed = e.printed_polytope().unwrap();
        assert_eq!(printed.vertices(), pk.negated().vertices(), "{name}");
        assert_eq!(printed.facets(), pk.negated().facets(), "{name}");
        assert_eq!(
            geometry::moments(&e.anticanonical_from_vertices().unwrap()).barycentre,
            geometry::moments(&pk).barycentre
        );
    }
}
