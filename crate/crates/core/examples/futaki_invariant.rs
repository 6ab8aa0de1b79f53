//! Re F(η) for torus vector fields `η = Σ η^s t_s ∂/∂t_s`.

use toric_futaki::futaki::{self, TorusField};
use toric_futaki::catalog;

fn main() {
    let fields: Vec<TorusField> = ["1,0", "0,1", "1,-1", "2+i,-1/2"].iter().map(|s| TorusField::parse(s).unwrap()).collect();
    let bl = catalog::entry("bl1p2").unwrap().fan().unwrap();
    let report = futaki::analyze_fan(bl, &fields).unwrap();
    println!("bl1p2: Re F(t_s d/dt_s) = (2pi)^2 * {}", report.re_futaki_basis_factor);
    for v in &report.fields {
        println!("  Re F({}) = {:.6} ({:?})", v.field, v.value.value, v.value.sign);
    }

    for name in ["x1", "x2", "x3"] {
        let f = catalog::entry(name).unwrap().fan().unwrap();
        let r = futaki::analyze_fan(f, &[]).unwrap();
        println!("{name}: Re F(t_s d/dt_s) = (2pi)^3 * {}", r.re_futaki_basis_factor);
    }

    let p3 = catalog::entry("p3").unwrap().fan().unwrap();
    let v = futaki::futaki_real(p3, &TorusField::parse("1,1,1").unwrap()).unwrap();
    println!("p3: Re F(1,1,1) = {}", v.value);

    println!("{}", serde_json::to_string_pretty(&report.convention).unwrap());
}
