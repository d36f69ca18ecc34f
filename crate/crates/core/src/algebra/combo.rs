use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{ToPrimitive, Zero};

use crate::arith::SieveTable;
use crate::error::Result;
use crate::LogCombo;

/// A formal combination `Σ c_p · log p` over primes `p`.
///
/// Zero coefficients are never stored, so two combinations represent the same
/// real number exactly when their maps are equal (the logarithms of distinct
/// primes are linearly independent over ℚ).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimeLogCombo<C> {
    terms: BTreeMap<u64, C>,
}

impl<C> Default for PrimeLogCombo<C> {
    fn default() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }
}

impl<C> PrimeLogCombo<C>
where
    C: Clone + Zero + PartialEq,
{
    pub fn zero() -> Self {
        Self::default()
    }

    /// `c · log p`.
    pub fn term(prime: u64, coeff: C) -> Self {
        let mut out = Self::zero();
        out.add_term(prime, coeff);
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u64, C)>) -> Self {
        let mut out = Self::zero();
        for (p, c) in terms {
            out.add_term(p, c);
        }
        out
    }

    pub fn add_term(&mut self, prime: u64, coeff: C) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.remove(&prime) {
            Some(old) => {
                let sum = old + coeff;
                if !sum.is_zero() {
                    self.terms.insert(prime, sum);
                }
            }
            None => {
                self.terms.insert(prime, coeff);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, prime: u64) -> C {
        self.terms.get(&prime).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &C)> + '_ {
        self.terms.iter().map(|(&p, c)| (p, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, by: &C) -> Self
    where
        C: Mul<Output = C>,
    {
        Self::from_terms(self.terms.iter().map(|(&p, c)| (p, c.clone() * by.clone())))
    }

    pub fn equals(&self, other: &Self) -> bool {
        self == other
    }
}

impl<C> Add for PrimeLogCombo<C>
where
    C: Clone + Zero + PartialEq,
{
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        for (p, c) in rhs.terms {
            self.add_term(p, c);
        }
        self
    }
}

impl<C> Neg for PrimeLogCombo<C>
where
    C: Clone + Zero + PartialEq + Neg<Output = C>,
{
    type Output = Self;

    fn neg(self) -> Self {
        Self {
            terms: self.terms.into_iter().map(|(p, c)| (p, -c)).collect(),
        }
    }
}

impl<C> Sub for PrimeLogCombo<C>
where
    C: Clone + Zero + PartialEq + Neg<Output = C>,
{
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<C: fmt::Display> fmt::Display for PrimeLogCombo<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*log({p})")?;
        }
        Ok(())
    }
}

/// `log n = Σ a_p log p` over `p^a_p ∥ n`.
pub fn log_of_integer(n: u64, sieve: &SieveTable) -> Result<LogCombo> {
    let fact = sieve.factorize(n)?;
    Ok(PrimeLogCombo::from_terms(fact.pairs().iter().map(
        |&(p, a)| (p, crate::Rational::from_integer(a.into())),
    )))
}

/// Numerical value `Σ c_p ln p`, rounded to `precision` decimal places when
/// `precision < 16`.
pub fn combo_to_float<C: ToPrimitive>(combo: &PrimeLogCombo<C>, precision: u32) -> f64 {
    let raw: f64 = combo
        .terms
        .iter()
        .map(|(&p, c)| c.to_f64().unwrap_or(f64::NAN) * (p as f64).ln())
        .sum();
    if precision == 0 || precision >= 16 {
        raw
    } else {
        let scale = 10f64.powi(precision as i32);
        (raw * scale).round() / scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational;
    use crate::arith::build_sieve;
    use crate::Rational;

    fn combo(terms: &[(u64, i64, i64)]) -> LogCombo {
        PrimeLogCombo::from_terms(terms.iter().map(|&(p, n, d)| (p, rational(n, d))))
    }

    #[test]
    fn log_of_integer_examples() {
        let s = build_sieve(1000).unwrap();
        assert_eq!(
            log_of_integer(12, &s).unwrap(),
            combo(&[(2, 2, 1), (3, 1, 1)])
        );
        assert!(log_of_integer(1, &s).unwrap().is_zero());
        assert_eq!(
            log_of_integer(360, &s).unwrap(),
            combo(&[(2, 3, 1), (3, 2, 1), (5, 1, 1)])
        );
        assert!(log_of_integer(1001, &s).is_err());
    }

    #[test]
    fn combo_ops() {
        assert!((combo(&[(2, 1, 1)]) + combo(&[(2, -1, 1)])).is_zero());
        assert_eq!(
            combo(&[(2, -1, 2), (3, -1, 3)]).scale(&rational(-1, 1)),
            combo(&[(2, 1, 2), (3, 1, 3)])
        );
        assert!(combo(&[(2, -1, 3), (3, -1, 6)]).equals(&combo(&[(3, -1, 6), (2, -1, 3)])));
        assert!(combo(&[(2, 1, 1)]).scale(&Rational::zero()).is_zero());
        assert_eq!(combo(&[(5, 0, 1)]).len(), 0);
    }

    #[test]
    fn float_values() {
        assert!((combo_to_float(&combo(&[(2, 1, 1)]), 16) - 0.6931471805599453).abs() < 1e-12);
        assert_eq!(combo_to_float(&LogCombo::zero(), 16), 0.0);
        let v = combo_to_float(&combo(&[(2, -1, 3), (3, -1, 6)]), 16);
        let oracle = -(2f64.ln()) / 3.0 - (3f64.ln()) / 6.0;
        assert!((v - oracle).abs() < 1e-12);
        assert!((v + 0.4141511083).abs() < 1e-9);
        assert_eq!(combo_to_float(&combo(&[(2, 1, 1)]), 3), 0.693);
    }

    #[test]
    fn generic_over_float_coefficients() {
        let c: PrimeLogCombo<f64> = PrimeLogCombo::from_terms([(2, 0.5), (3, 0.0)]);
        assert_eq!(c.len(), 1);
        assert!((combo_to_float(&c, 16) - 0.5 * 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn additive_over_products() {
        let s = build_sieve(1_000_000).unwrap();
        for m in 1..=1000u64 {
            for n in 1..=1000u64 {
                let lhs = log_of_integer(m * n, &s).unwrap();
                let rhs = log_of_integer(m, &s).unwrap() + log_of_integer(n, &s).unwrap();
                assert_eq!(lhs, rhs, "m={m} n={n}");
            }
        }
    }
}
