//! Exact rational scalars, vectors and dense matrices.
//!
//! Everything here is arbitrary precision. Determinants and linear solves
//! clear row denominators first and then eliminate over the integers
//! (Bareiss for `det`, content-reduced row echelon for `solve`), so the
//! only rationals that appear are the final answers.

use std::fmt;
use std::ops::{Index, IndexMut};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Reduced rational number with positive denominator.
pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("linear system is inconsistent")]
    NoSolution,
    #[error("linear system has a {nullity}-dimensional solution space")]
    Underdetermined { nullity: usize },
    #[error("zero vector has no primitive generator")]
    ZeroVector,
    #[error("vector has non-integer entry at position {0}")]
    NotIntegral(usize),
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"`, `"p"` or a plain decimal such as `"-0.25"` into an exact rational.
pub fn parse_rat(s: &str) -> Result<Rat, LinalgError> {
    let t = s.trim();
    let err = || LinalgError::Parse(s.to_string());
    if t.is_empty() {
        return Err(err());
    }
    if let Some((whole, frac)) = t.split_once('.') {
        if t.contains('/') || frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if !whole_digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let digits = format!("{whole_digits}{frac}");
        let mut num = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).map_err(|_| err())?;
        if negative {
            num = -num;
        }
        let den = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(Rat::new(num, den));
    }
    let r = Rat::from_str(t).map_err(|_| err())?;
    Ok(r)
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rat(r: &Rat) -> String {
    r.to_string()
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // numerator or denominator overflowed f64; fall back on digit scaling
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Exact conversion of a finite float to the dyadic rational it represents.
pub fn rat_from_f64(x: f64) -> Option<Rat> {
    Rat::from_float(x)
}

fn lcm_of_denominators<'a>(it: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    it.into_iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Serde adaptor that writes a [`Rat`] as its `"p/q"` string.
pub mod rat_string {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rat(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let raw = RatLiteral::deserialize(d)?;
        raw.into_rat().map_err(serde::de::Error::custom)
    }

    /// Accepts either a string (`"p/q"`, `"p"`, decimal) or an integer literal.
    #[derive(serde::Deserialize)]
    #[serde(untagged)]
    pub(crate) enum RatLiteral {
        Int(i64),
        Str(String),
    }

    impl RatLiteral {
        pub(crate) fn into_rat(self) -> Result<Rat, LinalgError> {
            match self {
                RatLiteral::Int(i) => Ok(rat(i)),
                RatLiteral::Str(s) => parse_rat(&s),
            }
        }
    }
}

/// Serde adaptor for a list of rationals.
pub mod rat_vec_string {
    use super::rat_string::RatLiteral;
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &QVec, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.rank()))?;
        for r in v.iter() {
            seq.serialize_element(&format_rat(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<QVec, D::Error> {
        let raw = Vec::<RatLiteral>::deserialize(d)?;
        raw.into_iter()
            .map(RatLiteral::into_rat)
            .collect::<Result<Vec<_>, _>>()
            .map(QVec::new)
            .map_err(serde::de::Error::custom)
    }
}

/// A point or direction in `Q^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QVec(Vec<Rat>);

impl QVec {
    pub fn new(entries: Vec<Rat>) -> Self {
        QVec(entries)
    }

    pub fn zeros(rank: usize) -> Self {
        QVec(vec![Rat::zero(); rank])
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        QVec(entries.iter().map(|&x| rat(x)).collect())
    }

    pub fn unit(rank: usize, axis: usize) -> Self {
        let mut v = Self::zeros(rank);
        v.0[axis] = Rat::one();
        v
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rat> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[Rat] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Rat> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|r| r.is_integer())
    }

    pub fn dot(&self, other: &QVec) -> Rat {
        debug_assert_eq!(self.rank(), other.rank());
        self.0.iter().zip(&other.0).fold(Rat::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn add(&self, other: &QVec) -> QVec {
        QVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &QVec) -> QVec {
        QVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &Rat) -> QVec {
        QVec(self.0.iter().map(|a| a * s).collect())
    }

    pub fn neg(&self) -> QVec {
        QVec(self.0.iter().map(|a| -a).collect())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(rat_to_f64).collect()
    }

    /// Integer entries, if every entry is an integer.
    pub fn to_bigints(&self) -> Option<Vec<BigInt>> {
        self.is_integral().then(|| self.0.iter().map(|r| r.to_integer()).collect())
    }

    /// The positive rational multiple of `self` that is a primitive integer vector.
    pub fn primitive_direction(&self) -> Option<QVec> {
        if self.is_zero() {
            return None;
        }
        let l = lcm_of_denominators(&self.0);
        let ints: Vec<BigInt> = self.0.iter().map(|r| (r * &l).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        Some(QVec(ints.into_iter().map(|x| Rat::from_integer(x / &g)).collect()))
    }
}

impl Index<usize> for QVec {
    type Output = Rat;
    fn index(&self, i: usize) -> &Rat {
        &self.0[i]
    }
}

impl IndexMut<usize> for QVec {
    fn index_mut(&mut self, i: usize) -> &mut Rat {
        &mut self.0[i]
    }
}

impl<'a> IntoIterator for &'a QVec {
    type Item = &'a Rat;
    type IntoIter = std::slice::Iter<'a, Rat>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl FromIterator<Rat> for QVec {
    fn from_iter<I: IntoIterator<Item = Rat>>(iter: I) -> Self {
        QVec(iter.into_iter().collect())
    }
}

impl fmt::Display for QVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

/// Dense row-major rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMat {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat { rows, cols, entries: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    /// Builds a matrix whose rows are the given vectors. All rows must share a rank.
    pub fn from_rows(rows: &[QVec]) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, QVec::rank);
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.rank() != cols {
                return Err(LinalgError::DimensionMismatch { expected: cols, found: r.rank() });
            }
            entries.extend(r.iter().cloned());
        }
        Ok(QMat { rows: rows.len(), cols, entries })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self, LinalgError> {
        let v: Vec<QVec> = rows.iter().map(|r| QVec::from_ints(r)).collect();
        Self::from_rows(&v)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> QVec {
        QVec(self.entries[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn row_vecs(&self) -> Vec<QVec> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn mul_vec(&self, x: &QVec) -> Result<QVec, LinalgError> {
        if x.rank() != self.cols {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, found: x.rank() });
        }
        Ok((0..self.rows).map(|i| self.row(i).dot(x)).collect())
    }

    pub fn transpose(&self) -> QMat {
        let mut t = QMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Rows scaled by the lcm of their denominators. Returns the integer rows
    /// and the per-row multipliers.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
        let mut out = Vec::with_capacity(self.rows);
        let mut scales = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let row = &self.entries[i * self.cols..(i + 1) * self.cols];
            let l = lcm_of_denominators(row);
            out.push(row.iter().map(|r| (r * &l).to_integer()).collect());
            scales.push(l);
        }
        (out, scales)
    }
}

impl Index<(usize, usize)> for QMat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.entries[i * self.cols + j]
    }
}

/// Bareiss determinant of a square integer matrix, consuming it.
fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Exact determinant via fraction-free elimination.
pub fn det(m: &QMat) -> Result<Rat, LinalgError> {
    if m.rows != m.cols {
        return Err(LinalgError::NotSquare { rows: m.rows, cols: m.cols });
    }
    let (ints, scales) = m.integer_rows();
    let d = bareiss_det(ints);
    let s = scales.iter().fold(BigInt::one(), |acc, x| acc * x);
    Ok(Rat::new(d, s))
}

/// Determinant of the matrix whose rows are `rows`.
pub fn det_rows(rows: &[QVec]) -> Result<Rat, LinalgError> {
    det(&QMat::from_rows(rows)?)
}

fn content(row: &[BigInt]) -> BigInt {
    row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

/// Integer row echelon form: returns reduced rows (content divided out) and pivot columns.
fn echelon(mut a: Vec<Vec<BigInt>>, cols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in 0..a.len() {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let (piv, f) = (a[r][c].clone(), a[i][c].clone());
            let (pr, fr) = (a[r].clone(), &mut a[i]);
            for (x, y) in fr.iter_mut().zip(&pr) {
                *x = &*x * &piv - &f * y;
            }
            let g = content(fr);
            if !g.is_zero() && !g.is_one() {
                for x in fr.iter_mut() {
                    *x = &*x / &g;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(m: &QMat) -> usize {
    let (ints, _) = m.integer_rows();
    echelon(ints, m.cols).1.len()
}

pub fn rank_of(rows: &[QVec]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    QMat::from_rows(rows).map(|m| rank(&m)).unwrap_or(0)
}

/// Solves `a·x = b` exactly. Overdetermined systems are accepted when consistent.
pub fn solve(a: &QMat, b: &QVec) -> Result<QVec, LinalgError> {
    if b.rank() != a.rows {
        return Err(LinalgError::DimensionMismatch { expected: a.rows, found: b.rank() });
    }
    let n = a.cols;
    let aug_rows: Vec<QVec> = (0..a.rows)
        .map(|i| {
            let mut r = a.row(i).into_inner();
            r.push(b[i].clone());
            QVec(r)
        })
        .collect();
    let aug = if aug_rows.is_empty() { QMat::zeros(0, n + 1) } else { QMat::from_rows(&aug_rows)? };
    let (ints, _) = aug.integer_rows();
    let (red, pivots) = echelon(ints, n + 1);
    if pivots.last() == Some(&n) {
        return Err(LinalgError::NoSolution);
    }
    if pivots.len() < n {
        return Err(LinalgError::Underdetermined { nullity: n - pivots.len() });
    }
    // fully reduced: row i has only its pivot among the first n columns
    let x = pivots
        .iter()
        .enumerate()
        .map(|(i, &c)| Rat::new(red[i][n].clone(), red[i][c].clone()))
        .collect();
    Ok(x)
}

/// Integer basis of `{x : m·x = 0}`, each basis vector primitive.
pub fn nullspace(m: &QMat) -> Vec<QVec> {
    let n = m.cols;
    let (ints, _) = m.integer_rows();
    let (red, pivots) = echelon(ints, n);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = QVec::zeros(n);
            v[f] = Rat::one();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = -Rat::new(red[i][f].clone(), red[i][c].clone());
            }
            v.primitive_direction().expect("basis vector is nonzero")
        })
        .collect()
}

/// Generalized cross product of `n-1` vectors in `Q^n`: a vector orthogonal to
/// all of them, zero iff they are linearly dependent.
pub fn orthogonal_complement_vector(rows: &[QVec], n: usize) -> QVec {
    debug_assert_eq!(rows.len() + 1, n);
    let mut out = QVec::zeros(n);
    for j in 0..n {
        let minor: Vec<QVec> = rows
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let d = if minor.is_empty() { Rat::one() } else { det_rows(&minor).expect("square minor") };
        out[j] = if j % 2 == 0 { d } else { -d };
    }
    out
}

/// Divides an integer vector by the gcd of its entries.
pub fn primitive(v: &QVec) -> Result<QVec, LinalgError> {
    if let Some(i) = v.iter().position(|r| !r.is_integer()) {
        return Err(LinalgError::NotIntegral(i));
    }
    v.primitive_direction().ok_or(LinalgError::ZeroVector)
}

/// Greatest common divisor of all `k×k` minors of a `k×n` integer matrix.
pub fn gcd_of_maximal_minors(rows: &[QVec]) -> BigInt {
    let k = rows.len();
    let n = rows.first().map_or(0, QVec::rank);
    let mut g = BigInt::zero();
    for cols in crate::subsets(n, k) {
        let sub: Vec<QVec> = rows.iter().map(|r| cols.iter().map(|&c| r[c].clone()).collect()).collect();
        let d = det_rows(&sub).expect("square minor");
        g = g.gcd(&d.to_integer());
    }
    g.abs()
}
