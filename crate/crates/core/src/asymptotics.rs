//! Main terms of the corollaries and trend reports against the exact sums.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{pow_omega_sum, SieveOptions, SieveTable};
use crate::error::{Error, Result};
use crate::identities::{ordered_lhs, th15_rhs, th2_rhs};
use crate::scalar::{real, Real};
use crate::{Int, Rational};

/// Rounding to fewer digits is done by [`euler_mascheroni`].
const GAMMA: f64 = 0.577_215_664_901_532_9;

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `(−1)^{r−1} x / (r (r−2)!)`.
pub fn main_term_cor3(r: u32, x: u64) -> Result<Rational> {
    if r < 2 {
        return Err(Error::param(format!("r must be at least 2 (got {r})")));
    }
    let sign = if r % 2 == 1 { 1 } else { -1 };
    Ok(Rational::new(
        BigInt::from(sign) * BigInt::from(x),
        BigInt::from(r) * factorial(r - 2),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LeadingCoeff<F> {
    pub value: F,
    pub tail_bound: F,
}

const EULER_BLOCK: usize = 4096;

/// `(1/r!) Π_{p ≤ cutoff} (1 − 1/p)^{r+1} (1 + (r+1)/(p−1))`, truncated.
///
/// With `u = 1/p` each factor equals `(1 − u)^r (1 + ru)`, which lies in
/// `(0, 1]` and satisfies `|log a_p| ≤ (r² + r) u² ≤ 2r² u²`. Summing over
/// `p > cutoff` and using `Σ_{n > c} 1/n² ≤ 1/c` gives
/// `|log(full / truncated)| ≤ 2r²/cutoff`, hence
/// `tail_bound = value · (exp(2r²/cutoff) − 1)`.
///
/// Blocks of primes are multiplied in parallel and the block products are
/// combined left to right, so the result does not depend on thread count.
pub fn leading_coeff_p<F: Real>(r: u32, prime_cutoff: u64) -> Result<LeadingCoeff<F>> {
    if r < 2 {
        return Err(Error::param(format!("r must be at least 2 (got {r})")));
    }
    let inv_fact = F::one() / real::<F>(factorial(r).to_f64().unwrap_or(f64::INFINITY));
    if prime_cutoff < 2 {
        return Ok(LeadingCoeff {
            value: inv_fact,
            tail_bound: inv_fact,
        });
    }
    let sieve = SieveTable::with_options(
        prime_cutoff,
        SieveOptions {
            mobius: false,
            omega: false,
            ..SieveOptions::default()
        },
    )?;
    let r1 = real::<F>(r as f64 + 1.0);
    let blocks: Vec<F> = sieve
        .primes()
        .par_chunks(EULER_BLOCK)
        .map(|chunk| {
            chunk.iter().fold(F::one(), |acc, &p| {
                let p = real::<F>(p as f64);
                let factor = (F::one() - p.recip()).powf(r1) * (F::one() + r1 / (p - F::one()));
                acc * factor
            })
        })
        .collect();
    let value = blocks.into_iter().fold(inv_fact, |acc, b| acc * b);
    let exponent = real::<F>(2.0 * (r as f64).powi(2) / prime_cutoff as f64);
    Ok(LeadingCoeff {
        value,
        tail_bound: value * exponent.exp_m1(),
    })
}

/// γ rounded to `precision_digits` decimal places, `1 ≤ precision_digits ≤ 15`.
pub fn euler_mascheroni<F: Real>(precision_digits: u32) -> Result<F> {
    if !(1..=15).contains(&precision_digits) {
        return Err(Error::param(format!(
            "precision must be between 1 and 15 digits (got {precision_digits})"
        )));
    }
    let scale = 10f64.powi(precision_digits as i32);
    let rounded = if precision_digits >= 15 {
        GAMMA
    } else {
        (GAMMA * scale).round() / scale
    };
    Ok(real(rounded))
}

/// `r res_{s=1}(s ζ(s)^{r−1} x^s)` for `r ∈ {2, 3}`: `2x` and
/// `3x log x + (6γ − 3)x`.
pub fn residue_main_term<F: Real>(r: u32, x: F) -> Result<F> {
    if x < F::one() {
        return Err(Error::param(format!("x must be at least 1 (got {x})")));
    }
    match r {
        2 => Ok(real::<F>(2.0) * x),
        3 => {
            let gamma: F = euler_mascheroni(15)?;
            let three = real::<F>(3.0);
            Ok(three * x * x.ln() + (real::<F>(6.0) * gamma - three) * x)
        }
        _ => Err(Error::param(format!(
            "residue main term is only available for r = 2 or 3 (got {r})"
        ))),
    }
}

/// Rows `(x, Σ_{n≤x} (−k)^{ω(n)} / √x)`.
pub fn rh_diagnostic(k: u32, x_grid: &[u64], sieve: &SieveTable) -> Result<Vec<(u64, f64)>> {
    if k == 0 {
        return Err(Error::param("k must be at least 1"));
    }
    x_grid
        .iter()
        .map(|&x| {
            if x == 0 {
                return Err(Error::param("x must be at least 1"));
            }
            let sum: Int = pow_omega_sum(-(k as i64), x, sieve)?;
            let sum = sum.to_f64().unwrap_or(f64::NAN);
            Ok((x, sum / (x as f64).sqrt()))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TrendKind {
    /// Strictly ordered grid sum against `(−1)^{r−1} x/(r(r−2)!)`.
    Cor3,
    /// `th2_rhs(r, x, μ)` against the residue main term.
    Th2Main,
    /// `Σ (1 + r)^{ω(n)}` against its leading term `c_r x (log x)^r`;
    /// lower-order terms of the polynomial are not modelled, so the
    /// normalized residual drifts like `(log x)^{r−1}`.
    Th15Lead,
}

impl fmt::Display for TrendKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TrendKind::Cor3 => "cor3",
            TrendKind::Th2Main => "th2_main",
            TrendKind::Th15Lead => "th15_lead",
        })
    }
}

impl FromStr for TrendKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cor3" => Ok(TrendKind::Cor3),
            "th2_main" | "th2" => Ok(TrendKind::Th2Main),
            "th15_lead" | "th15" => Ok(TrendKind::Th15Lead),
            _ => Err(Error::param(format!("no trend model for {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrendRow {
    pub x: u64,
    #[serde(with = "int_string")]
    pub exact: Int,
    pub main_term: f64,
    pub residual: f64,
    pub normalized_residual: f64,
}

mod int_string {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::Int;

    pub fn serialize<S: Serializer>(v: &Int, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Int, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Cutoff used for the leading coefficient in [`TrendKind::Th15Lead`] rows.
const TREND_PRIME_CUTOFF: u64 = 100_000;

/// Exact side, main term and residuals at every `x` of an ascending grid.
pub fn trend_scan(
    kind: TrendKind,
    r: u32,
    x_grid: &[u64],
    sieve: &SieveTable,
) -> Result<Vec<TrendRow>> {
    if x_grid.is_empty() {
        return Err(Error::param("empty x grid"));
    }
    if x_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::param("x grid must be strictly ascending"));
    }
    if x_grid[0] == 0 {
        return Err(Error::param("x must be at least 1"));
    }
    let max = *x_grid.last().unwrap();
    sieve.check(max)?;

    let lead = match kind {
        TrendKind::Th15Lead => Some(leading_coeff_p::<f64>(r, TREND_PRIME_CUTOFF)?.value),
        _ => None,
    };
    let mu: Vec<Int> = match kind {
        TrendKind::Th2Main => {
            if !(2..=3).contains(&r) {
                return Err(Error::param(format!(
                    "residue main term is only available for r = 2 or 3 (got {r})"
                )));
            }
            (0..=max)
                .map(|n| {
                    if n == 0 {
                        Int::zero()
                    } else {
                        Int::from(sieve.mobius_unchecked(n))
                    }
                })
                .collect()
        }
        _ => Vec::new(),
    };

    x_grid
        .iter()
        .map(|&x| {
            let xf = x as f64;
            let (exact, main): (Int, f64) = match kind {
                TrendKind::Cor3 => {
                    let main = main_term_cor3(r, x)?.to_f64().unwrap_or(f64::NAN);
                    (ordered_lhs(r, x, sieve)?, main)
                }
                TrendKind::Th2Main => (
                    th2_rhs(r, x, &mu[..=x as usize])?,
                    residue_main_term(r, xf)?,
                ),
                TrendKind::Th15Lead => {
                    let main = lead.unwrap_or(f64::NAN) * xf * xf.ln().powi(r as i32);
                    (th15_rhs(r, x, sieve)?, main)
                }
            };
            let residual = exact.to_f64().unwrap_or(f64::NAN) - main;
            Ok(TrendRow {
                x,
                exact,
                main_term: main,
                residual,
                normalized_residual: residual / xf,
            })
        })
        .collect()
}

/// Error-term exponent `α_r` for the additive grid sum, as tabulated.
#[derive(Debug, Clone, PartialEq)]
pub enum Alpha {
    Exact(Rational),
    Approx(f64),
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alpha::Exact(v) => write!(f, "{v}"),
            Alpha::Approx(v) => write!(f, "{v:.6}"),
        }
    }
}

impl Alpha {
    pub fn to_f64(&self) -> f64 {
        match self {
            Alpha::Exact(v) => v.to_f64().unwrap_or(f64::NAN),
            Alpha::Approx(v) => *v,
        }
    }
}

/// Tabulated exponent, or `None` where no value is given. At `r = 161` both
/// closed-form regimes apply; the first one is used.
pub fn alpha_table(r: u32) -> Result<Option<Alpha>> {
    if r < 3 {
        return Err(Error::param(format!("r must be at least 3 (got {r})")));
    }
    let exact = |n: i64, d: i64| Some(Alpha::Exact(Rational::new(n.into(), d.into())));
    Ok(match r {
        3 => exact(517, 1648),
        4 => exact(43, 96),
        10 => exact(35, 54),
        121..=161 => {
            let base = 2.0 / (4.45 * (r as f64 - 1.0));
            Some(Alpha::Approx(1.0 - base.powf(2.0 / 3.0) / 3.0))
        }
        162.. => {
            let base = 2.0 / (13.35 * (r as f64 - 160.9));
            Some(Alpha::Approx(1.0 - base.powf(2.0 / 3.0)))
        }
        _ => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational;
    use crate::arith::build_sieve;

    #[test]
    fn cor3_main_term() {
        assert_eq!(main_term_cor3(2, 100).unwrap(), rational(-50, 1));
        assert_eq!(main_term_cor3(3, 300).unwrap(), rational(100, 1));
        assert!(main_term_cor3(2, 0).unwrap().is_zero());
        assert_eq!(main_term_cor3(4, 16).unwrap(), rational(-2, 1));
        assert!(main_term_cor3(1, 5).is_err());
    }

    #[test]
    fn gamma_rounding() {
        assert_eq!(euler_mascheroni::<f64>(10).unwrap(), 0.5772156649);
        assert_eq!(euler_mascheroni::<f64>(1).unwrap(), 0.6);
        assert!(euler_mascheroni::<f64>(0).is_err());
        assert!(euler_mascheroni::<f64>(16).is_err());
        let g32: f32 = euler_mascheroni(6).unwrap();
        assert!((g32 - 0.577216).abs() < 1e-6);
    }

    #[test]
    fn gamma_against_harmonic_sum() {
        let gamma: f64 = euler_mascheroni(15).unwrap();
        for n in [1_000u32, 1_000_000] {
            let h: f64 = (1..=n).map(|k| 1.0 / k as f64).sum();
            let approx = h - (n as f64).ln();
            assert!((approx - gamma).abs() < 1.0 / n as f64, "n={n}");
        }
        // Euler–Maclaurin with three correction terms
        let n = 10_000f64;
        let h: f64 = (1..=10_000).map(|k| 1.0 / k as f64).sum();
        let em = h - n.ln() - 1.0 / (2.0 * n) + 1.0 / (12.0 * n * n);
        assert!((em - gamma).abs() < 1e-13);
    }

    #[test]
    fn residue_terms() {
        assert_eq!(residue_main_term(2, 500.0f64).unwrap(), 1000.0);
        let v: f64 = residue_main_term(3, 1000.0).unwrap();
        assert!((v - 21186.56).abs() < 0.1, "{v}");
        let gamma = euler_mascheroni::<f64>(15).unwrap();
        let v2: f64 = residue_main_term(3, 2.0).unwrap();
        assert!((v2 - (6.0 * 2f64.ln() + (6.0 * gamma - 3.0) * 2.0)).abs() < 1e-12);
        assert!(residue_main_term(4, 10.0f64).is_err());
        assert!(residue_main_term(2, 0.5f64).is_err());
    }

    #[test]
    fn leading_coefficient() {
        for r in 2..=4 {
            let empty: LeadingCoeff<f64> = leading_coeff_p(r, 1).unwrap();
            let fact = (1..=r).product::<u32>() as f64;
            assert_eq!(empty.value, 1.0 / fact);
            let small: LeadingCoeff<f64> = leading_coeff_p(r, 10).unwrap();
            let big: LeadingCoeff<f64> = leading_coeff_p(r, 1_000_000).unwrap();
            assert!((small.value - big.value).abs() < small.tail_bound, "r={r}");
            assert!(big.value <= small.value);
        }
        let c: LeadingCoeff<f64> = leading_coeff_p(2, 1_000_000).unwrap();
        assert!(c.tail_bound < 1e-4);
        let c32: LeadingCoeff<f32> = leading_coeff_p(2, 1000).unwrap();
        assert!((c32.value as f64 - leading_coeff_p::<f64>(2, 1000).unwrap().value).abs() < 1e-5);
        assert!(leading_coeff_p::<f64>(1, 100).is_err());
    }

    #[test]
    fn rh_rows() {
        let s = build_sieve(100_000).unwrap();
        let rows = rh_diagnostic(1, &[1, 10], &s).unwrap();
        assert_eq!(rows[0], (1, 1.0));
        assert!((rows[1].1 + 4.0 / 10f64.sqrt()).abs() < 1e-12);
        let rows = rh_diagnostic(2, &[1000, 10_000, 100_000], &s).unwrap();
        assert!(rows.iter().all(|(_, v)| v.is_finite()));
    }

    #[test]
    fn trend_rows() {
        let s = build_sieve(10_000).unwrap();
        let rows = trend_scan(TrendKind::Cor3, 2, &[1, 100, 400, 1600], &s).unwrap();
        assert_eq!(rows[0].exact, Int::zero());
        assert_eq!(rows[0].main_term, -0.5);
        assert_eq!(rows[0].residual, 0.5);
        assert!(rows[1..].iter().all(|r| r.normalized_residual.abs() < 0.5));

        let rows = trend_scan(TrendKind::Th2Main, 3, &[1000, 10_000], &s).unwrap();
        assert_eq!(rows[0].exact, Int::from(21207));
        assert!(rows.iter().all(|r| r.normalized_residual.is_finite()));

        let rows = trend_scan(TrendKind::Th2Main, 2, &[1, 7, 5000], &s).unwrap();
        assert!(rows.iter().all(|r| r.residual == 0.0));

        assert!(trend_scan(TrendKind::Cor3, 2, &[100, 10], &s).is_err());
        assert!(trend_scan(TrendKind::Cor3, 2, &[], &s).is_err());
        assert!(trend_scan(TrendKind::Th2Main, 5, &[100], &s).is_err());
        assert!(trend_scan(TrendKind::Th15Lead, 2, &[100, 1000], &s).is_ok());
    }

    #[test]
    fn alpha_annotations() {
        assert_eq!(
            alpha_table(3).unwrap(),
            Some(Alpha::Exact(rational(517, 1648)))
        );
        assert_eq!(
            alpha_table(4).unwrap(),
            Some(Alpha::Exact(rational(43, 96)))
        );
        assert_eq!(
            alpha_table(10).unwrap(),
            Some(Alpha::Exact(rational(35, 54)))
        );
        assert_eq!(alpha_table(5).unwrap(), None);
        let a = alpha_table(130).unwrap().unwrap().to_f64();
        let expect = 1.0 - (2.0f64 / (4.45 * 129.0)).powf(2.0 / 3.0) / 3.0;
        assert_eq!(a, expect);
        assert!(alpha_table(200).unwrap().unwrap().to_f64() < 1.0);
        assert!(alpha_table(2).is_err());
    }

    #[test]
    fn trend_row_json() {
        let row = TrendRow {
            x: 10,
            exact: Int::from(-4),
            main_term: -5.0,
            residual: 1.0,
            normalized_residual: 0.1,
        };
        let json = serde_json::to_string(&row).unwrap();
        assert_eq!(serde_json::from_str::<TrendRow>(&json).unwrap(), row);
    }
}
