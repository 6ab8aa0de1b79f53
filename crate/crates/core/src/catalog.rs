//! Built-in fans and polytopes: projective-space controls, a nonzero control,
//! and three toric degenerations of the degree-38 Fano threefold (the blowup
//! of `P^3` along a twisted cubic), each as printed and as reconciled.
//!
//! Rank-3 rays are written in terms of `e1, e2, e3` and `e0 = -e1 - e2 - e3`.

use std::sync::OnceLock;

use serde::Serialize;

use crate::exact::{ratio, QVec, Rat};
use crate::fan::Fan;
use crate::fano;
use crate::geometry::{self, VPolytope};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Transcribed verbatim from the published data, typos included.
    Printed,
    /// Computed here (reconciled fans, control values).
    Derived,
}

/// Which polytope a stored point set or barycentre refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// `P_{-K} = conv{-k_σ}`.
    Anticanonical,
    /// `-P_{-K} = conv{k_σ}`.
    Negated,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expected {
    pub barycentre: QVec,
    pub orientation: Orientation,
    pub source: Provenance,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    /// The fan exactly as printed, when one was printed.
    pub printed_fan: Option<Fan>,
    /// Fan used for analysis, with its provenance.
    pub fan: Option<(Fan, Provenance)>,
    /// Printed vertex list, in `Negated` orientation.
    pub printed_vertices: Option<Vec<QVec>>,
    pub expected: Option<Expected>,
    pub notes: Vec<String>,
}

impl CatalogEntry {
    pub fn fan(&self) -> Option<&Fan> {
        self.fan.as_ref().map(|(f, _)| f).or(self.printed_fan.as_ref())
    }

    /// `conv` of the printed vertex list, as printed (that is, `-P_{-K}`).
    pub fn printed_polytope(&self) -> Option<VPolytope> {
        self.printed_vertices.as_ref().map(|v| geometry::convex_hull(v).expect("catalog polytopes are full-dimensional"))
    }

    /// `P_{-K}` from the printed vertex list.
    pub fn anticanonical_from_vertices(&self) -> Option<VPolytope> {
        self.printed_polytope().map(|p| p.negated())
    }

    pub fn has_vertex_list(&self) -> bool {
        self.printed_vertices.is_some()
    }
}

fn rays3(names: &[&str]) -> Vec<QVec> {
    names.iter().map(|n| ray3(n)).collect()
}

/// Parses sums like `"e0+e3"`, `"2e1+e2"`, `"-e0"`.
fn ray3(expr: &str) -> QVec {
    let basis = |i: char| match i {
        '0' => [-1, -1, -1],
        '1' => [1, 0, 0],
        '2' => [0, 1, 0],
        '3' => [0, 0, 1],
        _ => unreachable!("bad basis index in {expr}"),
    };
    let mut acc = [0i64; 3];
    let mut sign = 1;
    let mut coeff = 0i64;
    let mut chars = expr.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '+' => sign = 1,
            '-' => sign = -1,
            '0'..='9' => coeff = coeff * 10 + c.to_digit(10).unwrap() as i64,
            'e' => {
                let b = basis(chars.next().expect("index after e"));
                let k = sign * if coeff == 0 { 1 } else { coeff };
                for i in 0..3 {
                    acc[i] += k * b[i];
                }
                coeff = 0;
                sign = 1;
            }
            _ => unreachable!("bad ray expression {expr}"),
        }
    }
    QVec::from_ints(&acc)
}

fn fan3(name: &str, rays: &[&str], cones: &[&[&str]]) -> Fan {
    let ray_vecs = rays3(rays);
    let cones = cones
        .iter()
        .map(|c| c.iter().map(|r| rays.iter().position(|x| x == r).expect("cone ray listed")).collect())
        .collect();
    Fan::new(3, ray_vecs, cones).expect("catalog fan is well formed").with_name(name)
}

fn points(list: &[[i64; 3]]) -> Vec<QVec> {
    list.iter().map(|p| QVec::from_ints(p)).collect()
}

fn thirty_eighth(v: [(i64, i64); 3]) -> QVec {
    v.iter().map(|&(p, q)| ratio(p, q) * ratio(1, 38)).collect::<Vec<Rat>>().into_iter().collect()
}

fn delta1_printed() -> Fan {
    fan3(
        "x1-printed",
        &["e0", "e1", "e2", "e3", "e0+e1", "e0+e3", "e2+e3"],
        &[
            &["e1", "e2", "e2+e3"],
            &["e1", "e3", "e2+e3"],
            &["e3", "e0+e3", "e2+e3"],
            &["e0", "e2", "e0+e1"],
            &["e0", "e2", "e0+e1"],
            &["e0", "e0+e3", "e0+e1"],
            &["e0", "e2", "e0+e3", "e2+e3"],
            &["e1", "e3", "e0+e1", "e0+e3"],
        ],
    )
}

fn delta2_printed() -> Fan {
    fan3(
        "x2-printed",
        &["e0", "e1", "e2", "e3", "e1+e2", "e2+e3", "e1+e3", "e1+e2+e3"],
        &[
            &["e0", "e1", "e1+e2"],
            &["e0", "e2", "e1+e2"],
            &["e0", "e2", "e2+e3"],
            &["e0", "e3", "e2+e3"],
            &["e0", "e3", "e1+e3"],
            &["e0", "e1", "e1+e3"],
            &["e1", "e1+e2", "e1+e3", "e1+e2+e3"],
            &["e2", "e1+e2", "e2+e3", "e1+e2+e3"],
        ],
    )
}

fn delta3_printed() -> Fan {
    fan3(
        "x3-printed",
        &["e0", "e1", "e2", "e3", "e2+e3", "2e1+e2", "-e0"],
        &[
            &["e0", "e1", "e3"],
            &["e0", "e2", "e2+e3"],
            &["e0", "e3", "e2+e3"],
            &["e0", "e1", "2e1+e2"],
            &["e0", "e2", "2e1+e2"],
            &["-e0", "e3", "e2+e3"],
            &["-e0", "e1", "e3", "2e1+e2"],
            &["-e0", "e2", "e2+e3", "2e1+e2"],
        ],
    )
}

fn x1_vertices() -> Vec<QVec> {
    points(&[[1, 1, 0], [1, 0, 1], [-1, 0, 1], [0, 1, -2], [1, 1, -2], [0, -1, 0], [-2, 0, 1], [1, -2, 1]])
}

fn x2_vertices() -> Vec<QVec> {
    points(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 0, -2], [0, 1, -2], [1, -2, 0], [-2, 1, 0], [-2, 0, 1], [0, -2, 1]])
}

fn x3_vertices() -> Vec<QVec> {
    points(&[[1, -3, 1], [-2, 1, 0], [-2, 0, 1], [1, -1, -1], [0, 1, -2], [0, 0, 1], [1, -1, 1], [0, 1, 0]])
}

fn reconciled(printed: &Fan, name: &str) -> Fan {
    fano::reconcile_fan(printed).expect("printed rays bound a polytope").with_name(name)
}

fn simple(name: &'static str, description: &'static str, fan: Fan, barycentre: QVec, note: &str) -> CatalogEntry {
    CatalogEntry {
        name,
        description,
        printed_fan: None,
        fan: Some((fan.with_name(name), Provenance::Derived)),
        printed_vertices: None,
        expected: Some(Expected { barycentre, orientation: Orientation::Anticanonical, source: Provenance::Derived }),
        notes: vec![note.to_string()],
    }
}

fn build() -> Vec<CatalogEntry> {
    let p1 = Fan::from_int_rays(1, &[vec![1], vec![-1]], vec![vec![0], vec![1]]).unwrap();
    let p2 = Fan::from_int_rays(2, &[vec![1, 0], vec![0, 1], vec![-1, -1]], vec![vec![0, 1], vec![1, 2], vec![2, 0]]).unwrap();
    let p3 = fan3(
        "p3",
        &["e0", "e1", "e2", "e3"],
        &[&["e0", "e1", "e2"], &["e0", "e1", "e3"], &["e0", "e2", "e3"], &["e1", "e2", "e3"]],
    );
    let p1xp1 = Fan::from_int_rays(
        2,
        &[vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]],
        vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
    )
    .unwrap();
    let bl1p2 = Fan::from_int_rays(
        2,
        &[vec![1, 0], vec![1, 1], vec![0, 1], vec![-1, -1]],
        vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
    )
    .unwrap();

    let d1 = delta1_printed();
    let d2 = delta2_printed();
    let d3 = delta3_printed();

    vec![
        simple("p1", "projective line", p1, QVec::zeros(1), "centrally symmetric control"),
        simple("p2", "projective plane", p2, QVec::zeros(2), "symmetric control"),
        simple("p3", "projective 3-space", p3, QVec::zeros(3), "symmetric control; printed fan of P^3"),
        simple("p1xp1", "product of two projective lines", p1xp1, QVec::zeros(2), "centrally symmetric control"),
        simple(
            "bl1p2",
            "projective plane blown up at a torus-fixed point",
            bl1p2,
            QVec::new(vec![ratio(1, 12), ratio(1, 12)]),
            "derived control: smooth, nonzero barycentre",
        ),
        CatalogEntry {
            name: "x1",
            description: "degeneration along three nonconcurrent lines (two terminal singular points)",
            printed_fan: Some(d1.clone()),
            fan: Some((reconciled(&d1, "x1"), Provenance::Derived)),
            printed_vertices: Some(x1_vertices()),
            expected: Some(Expected {
                barycentre: thirty_eighth([(2, 3), (2, 3), (-2, 3)]),
                orientation: Orientation::Negated,
                source: Provenance::Printed,
            }),
            notes: vec![
                "8 points listed, 7 of them vertices; printed fan lists 8 cones with <e0,e2,e0+e1> twice".into(),
                "cone <e0,e2,e0+e3,e2+e3> gives k = (-2,1,0); the printed list has (-2,0,1) instead".into(),
                "reconciled fan adds <e1,e2,e0+e1> (k = (1,1,-2))".into(),
            ],
        },
        CatalogEntry {
            name: "x2",
            description: "degeneration along three concurrent lines (three terminal singular points)",
            printed_fan: Some(d2.clone()),
            fan: Some((reconciled(&d2, "x2"), Provenance::Derived)),
            printed_vertices: Some(x2_vertices()),
            expected: Some(Expected {
                barycentre: thirty_eighth([(-2, 3), (-2, 3), (-2, 3)]),
                orientation: Orientation::Negated,
                source: Provenance::Printed,
            }),
            notes: vec![
                "9 vertices; printed fan lists 8 cones".into(),
                "reconciled fan adds <e3,e1+e3,e2+e3,e1+e2+e3> (k = (0,0,1))".into(),
            ],
        },
        CatalogEntry {
            name: "x3",
            description: "degeneration along a double line and a line (terminal, quotient and canonical points)",
            printed_fan: Some(d3.clone()),
            fan: Some((reconciled(&d3, "x3"), Provenance::Derived)),
            printed_vertices: Some(x3_vertices()),
            expected: Some(Expected {
                barycentre: thirty_eighth([(-2, 3), (-2, 1), (2, 3)]),
                orientation: Orientation::Negated,
                source: Provenance::Printed,
            }),
            notes: vec!["8 vertices; printed fan lists 8 cones".into()],
        },
        printed_only("x1-printed", "fan of x1 as printed", d1, "duplicate cone <e0,e2,e0+e1>; incomplete"),
        printed_only("x2-printed", "fan of x2 as printed", d2, "missing the cone dual to vertex (0,0,1); incomplete"),
        printed_only("x3-printed", "fan of x3 as printed", d3, "as printed"),
    ]
}

fn printed_only(name: &'static str, description: &'static str, fan: Fan, note: &str) -> CatalogEntry {
    CatalogEntry {
        name,
        description,
        printed_fan: Some(fan),
        fan: None,
        printed_vertices: None,
        expected: None,
        notes: vec![note.to_string()],
    }
}

static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();

/// All entries, in stable listing order.
pub fn all() -> &'static [CatalogEntry] {
    CATALOG.get_or_init(build)
}

pub fn entry(name: &str) -> Option<&'static CatalogEntry> {
    all().iter().find(|e| e.name == name)
}

pub fn names() -> Vec<&'static str> {
    all().iter().map(|e| e.name).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ray_expressions() {
        assert_eq!(ray3("e0"), QVec::from_ints(&[-1, -1, -1]));
        assert_eq!(ray3("e0+e1"), QVec::from_ints(&[0, -1, -1]));
        assert_eq!(ray3("2e1+e2"), QVec::from_ints(&[2, 1, 0]));
        assert_eq!(ray3("-e0"), QVec::from_ints(&[1, 1, 1]));
        assert_eq!(ray3("e1+e2+e3"), QVec::from_ints(&[1, 1, 1]));
    }

    #[test]
    fn listing_order_and_names() {
        let n = names();
        assert_eq!(&n[..8], &["p1", "p2", "p3", "p1xp1", "bl1p2", "x1", "x2", "x3"]);
        assert!(n.contains(&"x2-printed"));
        assert!(entry("nope").is_none());
    }

    #[test]
    fn every_entry_has_data() {
        for e in all() {
            assert!(e.fan().is_some() || e.has_vertex_list(), "{}", e.name);
        }
    }

    #[test]
    fn printed_fan_sizes() {
        assert_eq!(delta1_printed().max_cones().len(), 8);
        assert_eq!(delta2_printed().max_cones().len(), 8);
        assert_eq!(entry("x2").unwrap().fan().unwrap().max_cones().len(), 9);
        assert_eq!(entry("x1").unwrap().fan().unwrap().max_cones().len(), 8);
    }
}
