//! Exact rational linear algebra: Bareiss determinants, solves and primitive vectors.

use toric_futaki::exact::{self, ratio, QMat, QVec};

fn main() {
    let m = QMat::from_int_rows(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]).unwrap();
    println!("det = {}", exact::det(&m).unwrap());

    let half = QMat::from_rows(&[
        QVec::new(vec![ratio(1, 2), ratio(1, 3)]),
        QVec::new(vec![ratio(1, 4), ratio(1, 5)]),
    ])
    .unwrap();
    println!("det of rational matrix = {}", exact::det(&half).unwrap());

    let rhs = QVec::from_ints(&[1, 0, 1]);
    let x = exact::solve(&m, &rhs).unwrap();
    println!("solution of m x = {rhs}: {x}");
    assert_eq!(m.mul_vec(&x).unwrap(), rhs);

    let v = QVec::new(vec![ratio(4, 6), ratio(-2, 3), ratio(8, 3)]);
    println!("primitive direction of {v}: {}", v.primitive_direction().unwrap());
    let w = QVec::from_ints(&[6, -9, 12]);
    println!("primitive vector of {w}: {}", exact::primitive(&w).unwrap());

    for s in ["-3/4", "0.125", "7"] {
        let r = exact::parse_rat(s).unwrap();
        println!("{s:>6} -> {}", exact::format_rat(&r));
    }
}
