use std::fmt;

/// Canonical prime factorization: `(prime, exponent)` pairs with strictly
/// increasing primes and positive exponents. The empty list represents 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Factorization {
    pairs: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn one() -> Self {
        Self::default()
    }

    /// Callers guarantee primes are strictly increasing and exponents are positive.
    pub fn from_sorted_pairs(pairs: Vec<(u64, u32)>) -> Self {
        debug_assert!(pairs.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(pairs.iter().all(|&(_, a)| a >= 1));
        Self { pairs }
    }

    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.pairs
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.pairs.iter().map(|&(p, _)| p)
    }

    pub fn is_one(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn omega(&self) -> u32 {
        self.pairs.len() as u32
    }

    pub fn is_squarefree(&self) -> bool {
        self.pairs.iter().all(|&(_, a)| a == 1)
    }

    pub fn mobius(&self) -> i8 {
        if !self.is_squarefree() {
            0
        } else if self.pairs.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn kernel(&self) -> u64 {
        self.primes().product()
    }

    /// Reconstructs `n`; `None` on `u64` overflow.
    pub fn value(&self) -> Option<u64> {
        self.pairs
            .iter()
            .try_fold(1u64, |acc, &(p, a)| acc.checked_mul(p.checked_pow(a)?))
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return write!(f, "1");
        }
        for (i, &(p, a)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if a == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{a}")?;
            }
        }
        Ok(())
    }
}

/// Distinct prime divisors of `n` by trial division; for arguments that may
/// lie outside a sieve.
pub(crate) fn trial_prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::build_sieve;
    use super::*;

    #[test]
    fn examples() {
        let s = build_sieve(40_000).unwrap();
        assert_eq!(s.factorize(12).unwrap().pairs(), &[(2, 2), (3, 1)]);
        assert!(s.factorize(1).unwrap().is_one());
        assert_eq!(
            s.factorize(30030).unwrap().pairs(),
            &[(2, 1), (3, 1), (5, 1), (7, 1), (11, 1), (13, 1)]
        );
        assert_eq!(s.factorize(360).unwrap().to_string(), "2^3 * 3^2 * 5");
    }

    #[test]
    fn trial_divisors() {
        assert_eq!(trial_prime_divisors(1), Vec::<u64>::new());
        assert_eq!(trial_prime_divisors(72), vec![2, 3]);
        assert_eq!(trial_prime_divisors(97), vec![97]);
        assert_eq!(
            trial_prime_divisors(2 * 3 * 5 * 7 * 11 * 13),
            vec![2, 3, 5, 7, 11, 13]
        );
    }
}
