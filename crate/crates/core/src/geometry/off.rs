use std::fmt::Write;

use super::{GeometryError, VPolytope};

/// OFF text for a rank-3 polytope. Facet vertex lists are ordered
/// counter-clockwise when seen from outside.
pub fn to_off(p: &VPolytope) -> Result<String, GeometryError> {
    if p.rank != 3 {
        return Err(GeometryError::NotThreeDimensional(p.rank));
    }
    let verts: Vec<Vec<f64>> = p.vertices.iter().map(|v| v.to_f64()).collect();
    let mut out = String::new();
    writeln!(out, "OFF").unwrap();
    writeln!(out, "{} {} 0", verts.len(), p.facets.len()).unwrap();
    for v in &verts {
        writeln!(out, "{} {} {}", v[0], v[1], v[2]).unwrap();
    }
    for f in &p.facets {
        let idx = p.facet_vertices(f);
        let n = f.normal.to_f64();
        // outward normal is -n since facets are written as <n, y> + c ≥ 0
        let outward = [-n[0], -n[1], -n[2]];
        let c: Vec<f64> = (0..3).map(|k| idx.iter().map(|&i| verts[i][k]).sum::<f64>() / idx.len() as f64).collect();
        let r0: Vec<f64> = (0..3).map(|k| verts[idx[0]][k] - c[k]).collect();
        let r1 = cross(&outward, &r0);
        let mut ordered: Vec<(f64, usize)> = idx
            .iter()
            .map(|&i| {
                let d: Vec<f64> = (0..3).map(|k| verts[i][k] - c[k]).collect();
                (dot(&d, &r1).atan2(dot(&d, &r0)), i)
            })
            .collect();
        ordered.sort_by(|a, b| a.0.total_cmp(&b.0));
        write!(out, "{}", ordered.len()).unwrap();
        for (_, i) in ordered {
            write!(out, " {i}").unwrap();
        }
        writeln!(out).unwrap();
    }
    Ok(out)
}

fn cross(a: &[f64], b: &[f64]) -> Vec<f64> {
    vec![a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
