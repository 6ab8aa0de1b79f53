//! Real part of the generalized Futaki invariant on the torus Lie algebra, and
//! the moment map of the anticanonical embedding.
//!
//! For `η = Σ η^s t_s ∂/∂t_s`,
//!
//! ```text
//! Re F(η) = -(2π)^n Σ_s Re(η^s) ∫_{P_{-K}} y_s dy
//! ```
//!
//! The sum is exact; `(2π)^n` is applied once at the end. The imaginary part
//! vanishes on the torus because the reference metric is invariant under the
//! compact torus, so `F(∂/∂θ_s) = 0`.

use std::f64::consts::PI;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::exact::{self, QVec, Rat};
use crate::fan::Fan;
use crate::fano::{self, FanoError, HPolytope, TCartierDivisor};
use crate::geometry::{self, Inequality, MomentData, VPolytope};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FutakiError {
    #[error("vector field has {found} coefficients, lattice rank is {expected}")]
    RankMismatch { expected: usize, found: usize },
    #[error("cannot parse torus coefficient {0:?}")]
    Parse(String),
    #[error(transparent)]
    Fano(#[from] FanoError),
}

/// `η = Σ η^s t_s ∂/∂t_s` with complex coefficients stored as exact `(re, im)` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusField {
    coeffs: Vec<(Rat, Rat)>,
}

impl TorusField {
    pub fn new(coeffs: Vec<(Rat, Rat)>) -> Self {
        TorusField { coeffs }
    }

    pub fn real(re: Vec<Rat>) -> Self {
        TorusField { coeffs: re.into_iter().map(|r| (r, Rat::zero())).collect() }
    }

    /// `t_s ∂/∂t_s`.
    pub fn basis(rank: usize, s: usize) -> Self {
        Self::real(QVec::unit(rank, s).into_inner())
    }

    /// Finite floats are converted exactly to the dyadic rationals they denote.
    pub fn from_f64(re: &[f64], im: &[f64]) -> Option<Self> {
        let coeffs = re
            .iter()
            .zip(im)
            .map(|(&a, &b)| Some((exact::rat_from_f64(a)?, exact::rat_from_f64(b)?)))
            .collect::<Option<Vec<_>>>()?;
        Some(TorusField { coeffs })
    }

    /// Parses a comma-separated list such as `"1, -1/2+3i, 2i, 0.5"`.
    pub fn parse(s: &str) -> Result<Self, FutakiError> {
        s.split(',').map(parse_complex).collect::<Result<Vec<_>, _>>().map(Self::new)
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn re(&self) -> impl Iterator<Item = &Rat> {
        self.coeffs.iter().map(|(r, _)| r)
    }

    pub fn coeffs(&self) -> &[(Rat, Rat)] {
        &self.coeffs
    }

    /// `α·self + β·other` for real `α, β`.
    pub fn combine(&self, alpha: &Rat, other: &TorusField, beta: &Rat) -> TorusField {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|((a, b), (c, d))| (alpha * a + beta * c, alpha * b + beta * d))
            .collect();
        TorusField { coeffs }
    }
}

impl fmt::Display for TorusField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(re, im)| {
                if im.is_zero() {
                    re.to_string()
                } else if im.is_negative() {
                    format!("{re}{im}i")
                } else {
                    format!("{re}+{im}i")
                }
            })
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

fn parse_complex(raw: &str) -> Result<(Rat, Rat), FutakiError> {
    let err = || FutakiError::Parse(raw.to_string());
    let t: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(err());
    }
    let Some(body) = t.strip_suffix('i') else {
        return Ok((exact::parse_rat(&t).map_err(|_| err())?, Rat::zero()));
    };
    // split "a+bi" / "a-bi" at the last sign that is not leading
    let split = body.char_indices().skip(1).filter(|&(_, c)| c == '+' || c == '-').map(|(i, _)| i).last();
    let (re, im) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        other => other.trim_start_matches('+'),
    };
    Ok((exact::parse_rat(re).map_err(|_| err())?, exact::parse_rat(im).map_err(|_| err())?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(r: &Rat) -> Sign {
        if r.is_positive() {
            Sign::Positive
        } else if r.is_negative() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }
}

/// `Re F(η) = (2π)^n · rational_factor`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FutakiValue {
    #[serde(with = "exact::rat_string")]
    pub rational_factor: Rat,
    pub value: f64,
    pub sign: Sign,
}

pub fn two_pi_pow(n: usize) -> f64 {
    (2.0 * PI).powi(n as i32)
}

/// `Re F(η)` from the exact moments of `P_{-K}`.
pub fn futaki_from_moments(m: &MomentData, eta: &TorusField) -> Result<FutakiValue, FutakiError> {
    let n = m.first_moments.rank();
    if eta.rank() != n {
        return Err(FutakiError::RankMismatch { expected: n, found: eta.rank() });
    }
    let s: Rat = eta.re().zip(m.first_moments.iter()).map(|(e, y)| e * y).sum();
    let rational_factor = -s;
    let value = two_pi_pow(n) * exact::rat_to_f64(&rational_factor);
    let sign = Sign::of(&rational_factor);
    Ok(FutakiValue { rational_factor, value, sign })
}

/// `Re F(η)` for an almost Fano fan.
pub fn futaki_real(f: &Fan, eta: &TorusField) -> Result<FutakiValue, FutakiError> {
    if eta.rank() != f.rank() {
        return Err(FutakiError::RankMismatch { expected: f.rank(), found: eta.rank() });
    }
    let (_, p) = fano::anticanonical_data(f)?;
    futaki_from_moments(&geometry::moments(&p), eta)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FieldVerdict {
    pub field: String,
    #[serde(flatten)]
    pub value: FutakiValue,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Convention {
    pub polytope: &'static str,
    pub formula: &'static str,
    pub normalization: &'static str,
    pub imaginary_part: &'static str,
}

pub const CONVENTION: Convention = Convention {
    polytope: "P_{-K} = conv{-k_sigma}, where <n_i, k_sigma> = 1 on the generators of each maximal cone",
    formula: "Re F(eta) = -(2 pi)^n * sum_s Re(eta^s) * integral_{P_{-K}} y_s dy",
    normalization: "(2 pi c_1)^n a_s is read as (2 pi)^n * volume * a_s = (2 pi)^n * integral y_s dy",
    imaginary_part: "0: F(d/d theta_s) = 0 for a metric invariant under the compact torus",
};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FutakiReport {
    #[serde(flatten)]
    pub moments: MomentData,
    /// `n! · volume`, the anticanonical degree `c_1(X)^n`.
    #[serde(with = "exact::rat_string")]
    pub degree: Rat,
    /// `Re F(t_s ∂/∂t_s)` for each `s`.
    pub re_futaki_basis: Vec<f64>,
    /// `-∫ y_s dy`, so that `re_futaki_basis[s] = (2π)^n · factor[s]`.
    #[serde(with = "exact::rat_vec_string")]
    pub re_futaki_basis_factor: QVec,
    pub im_futaki: f64,
    pub fields: Vec<FieldVerdict>,
    pub convention: Convention,
}

/// Full report for `P_{-K}` given directly as a polytope.
pub fn analyze_anticanonical(p: &VPolytope, fields: &[TorusField]) -> Result<FutakiReport, FutakiError> {
    let moments = geometry::moments(p);
    let n = p.rank();
    let factor = moments.first_moments.neg();
    let scale = two_pi_pow(n);
    let re_futaki_basis = factor.iter().map(|r| scale * exact::rat_to_f64(r)).collect();
    let fields = fields
        .iter()
        .map(|eta| Ok(FieldVerdict { field: eta.to_string(), value: futaki_from_moments(&moments, eta)? }))
        .collect::<Result<Vec<_>, FutakiError>>()?;
    Ok(FutakiReport {
        degree: moments.normalized_volume(),
        moments,
        re_futaki_basis,
        re_futaki_basis_factor: factor,
        im_futaki: 0.0,
        fields,
        convention: CONVENTION,
    })
}

/// Full report for an almost Fano fan.
pub fn analyze_fan(f: &Fan, fields: &[TorusField]) -> Result<FutakiReport, FutakiError> {
    let (_, p) = fano::anticanonical_data(f)?;
    analyze_anticanonical(&p, fields)
}

/// Lattice points `u_0 = 0, u_1, …, u_N` of `k·P_{-K}` defining `X → P^N`.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingData {
    pub k: BigInt,
    pub exponents: Vec<QVec>,
    /// Facets of `k·P_{-K}`.
    pub facets: Vec<Inequality>,
    exps_f64: Vec<Vec<f64>>,
}

impl EmbeddingData {
    fn from_hpolytope(k: BigInt, h: &HPolytope) -> Result<Self, FanoError> {
        let mut exponents = h.lattice_points()?;
        if let Some(z) = exponents.iter().position(QVec::is_zero) {
            let zero = exponents.remove(z);
            exponents.insert(0, zero);
        }
        let exps_f64 = exponents.iter().map(QVec::to_f64).collect();
        Ok(EmbeddingData { k, exponents, facets: h.inequalities.clone(), exps_f64 })
    }

    /// Embedding data for `k·P` where `p` plays the role of `P_{-K}`.
    pub fn from_polytope(p: &VPolytope, k: BigInt) -> Result<Self, FanoError> {
        let kp = p.dilated(&Rat::from_integer(k.clone()));
        Self::from_hpolytope(k, &HPolytope { inequalities: kp.facets().to_vec() })
    }

    /// Ambient projective dimension `N`.
    pub fn ambient_dim(&self) -> usize {
        self.exponents.len().saturating_sub(1)
    }

    pub fn rank(&self) -> usize {
        self.exponents.first().map_or(0, QVec::rank)
    }

    pub fn exponents_f64(&self) -> &[Vec<f64>] {
        &self.exps_f64
    }

    fn scaled_exponents(&self, x: &[f64]) -> Vec<f64> {
        self.exps_f64.iter().map(|u| 2.0 * u.iter().zip(x).map(|(a, b)| a * b).sum::<f64>()).collect()
    }
}

/// `k` from the Gorenstein index, exponents from `k·P_{-K}`.
pub fn build_embedding(f: &Fan) -> Result<EmbeddingData, FutakiError> {
    let (g, _) = fano::anticanonical_data(f)?;
    let h = fano::divisor_polytope(f, &TCartierDivisor::anticanonical_multiple(f, &g.index))?;
    Ok(EmbeddingData::from_hpolytope(g.index, &h)?)
}

/// `f(x) = log Σ_j exp(2⟨x, u_j⟩)`, shifted by the largest exponent.
pub fn f_eval(e: &EmbeddingData, x: &[f64]) -> f64 {
    let z = e.scaled_exponents(x);
    let m = z.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    m + z.iter().map(|v| (v - m).exp()).sum::<f64>().ln()
}

/// `μ(x) = Σ_j u_j w_j(x)` with softmax weights `w_j ∝ exp(2⟨x, u_j⟩)`; equals `½∇f`.
pub fn moment_map(e: &EmbeddingData, x: &[f64]) -> Vec<f64> {
    let z = e.scaled_exponents(x);
    let m = z.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let w: Vec<f64> = z.iter().map(|v| (v - m).exp()).collect();
    let total: f64 = w.iter().sum();
    let n = x.len();
    let mut mu = vec![0.0; n];
    for (u, wj) in e.exps_f64.iter().zip(&w) {
        for k in 0..n {
            mu[k] += u[k] * wj;
        }
    }
    mu.iter_mut().for_each(|v| *v /= total);
    mu
}

pub const FD_STEP: f64 = 1e-5;

/// Largest `|∂_k f - 2μ_k|` over seeded random points in `[-3, 3]^n`, with
/// `∂_k f` from central differences.
pub fn gradient_selftest(e: &EmbeddingData, trials: usize, seed: u64) -> f64 {
    let n = e.rank();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-3.0..=3.0)).collect();
        let mu = moment_map(e, &x);
        for k in 0..n {
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[k] += FD_STEP;
            xm[k] -= FD_STEP;
            let fd = (f_eval(e, &xp) - f_eval(e, &xm)) / (2.0 * FD_STEP);
            worst = worst.max((fd - 2.0 * mu[k]).abs());
        }
    }
    worst
}

/// Seeded sample points used by the self-test, exposed for containment checks.
pub fn selftest_points(rank: usize, trials: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials).map(|_| (0..rank).map(|_| rng.gen_range(-3.0..=3.0)).collect()).collect()
}
