//! JSON import/export of fans and polytopes, and OFF output for rank 3.

use toric_futaki::{catalog, fano, geometry, io};

fn main() {
    let f = catalog::entry("bl1p2").unwrap().fan().unwrap();
    let text = io::fan_to_json(f);
    println!("{text}");
    assert_eq!(&io::parse_fan(&text).unwrap(), f);

    let (_, p) = fano::anticanonical_data(f).unwrap();
    println!("{}", io::vertices_to_json(p.vertices()));

    let x3 = catalog::entry("x3").unwrap().printed_polytope().unwrap();
    print!("{}", geometry::to_off(&x3).unwrap());

    match io::parse_fan(r#"{ "rank": 2, "rays": [[1, 0], [0, "one"]], "max_cones": [] }"#) {
        Err(e) => println!("parse error: {e}"),
        Ok(_) => unreachable!(),
    }
}
