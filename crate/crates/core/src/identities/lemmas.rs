//! Both sides of the auxiliary coprimality and smooth-support lemmas.
//!
//! Left sides enumerate literally; right sides use closed forms or sieve sums.

use std::fmt;
use std::str::FromStr;

use num_integer::gcd;
use num_traits::{One, Zero};

use crate::algebra::rational_pow;
use crate::arith::trial_prime_divisors;
use crate::arith::{pow_omega_sum, SieveTable};
use crate::error::{Error, Result};
use crate::{Int, Rational};

use crate::arith::Factorization;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LemmaId {
    /// `Σ_{n≤x, (n,q)=1} μ(n)⌊x/n⌋ = #{n ≤ x : n | q^∞}`
    Le2,
    /// `Σ_{n≤x, q|n} μ(n) #{k ≤ x/n : k | n^∞} = Σ_{n≤x, q|γ(n)} (−1)^{ω(n)}`
    Le5,
    /// `Σ_{d|n} μ(d)² k^{ω(d)} = (k + 1)^{ω(n)}`, `k ∈ ℚ*`
    Le6,
    /// `Σ_{n_1⋯n_k | q} μ(n_1)²⋯μ(n_k)² = (k + 1)^{ω(q)}`, `q` squarefree
    Le7,
    /// `Σ_{n≤x, (n,q)=1} μ(n)²⌊x/n⌋ = Σ_{b≤x, b|q^∞} Σ_{a≤x/b, (a,q)=1} 2^{ω(a)}`
    Le8,
    /// the two-way rearrangement of the `q | γ(n)` count weighted by `2^{ω(h)}`
    Le9,
    /// `Σ_{m≤x} 2^{ω(m)} Σ_{n≤x/m, (m,γ(n))=1} r^{ω(n)} = Σ_{m≤x} (r + 2)^{ω(m)}`
    Le10,
}

impl LemmaId {
    pub const ALL: [LemmaId; 7] = [
        LemmaId::Le2,
        LemmaId::Le5,
        LemmaId::Le6,
        LemmaId::Le7,
        LemmaId::Le8,
        LemmaId::Le9,
        LemmaId::Le10,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LemmaId::Le2 => "le2",
            LemmaId::Le5 => "le5",
            LemmaId::Le6 => "le6",
            LemmaId::Le7 => "le7",
            LemmaId::Le8 => "le8",
            LemmaId::Le9 => "le9",
            LemmaId::Le10 => "le10",
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LemmaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.strip_prefix("lemma.").unwrap_or(s);
        LemmaId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::param(format!("unknown lemma {s:?}")))
    }
}

fn check_qx(q: u64, x: u64, sieve: &SieveTable) -> Result<()> {
    if q == 0 || x == 0 {
        return Err(Error::param("q and x must be at least 1"));
    }
    sieve.check(x)
}

fn is_coprime(a: u64, b: u64) -> bool {
    gcd(a, b) == 1
}

fn kernel_of(sieve: &SieveTable, n: u64) -> u64 {
    sieve.prime_divisors_unchecked(n).into_iter().product()
}

/// Every `n ≤ bound` built from `primes` (with multiplicity), including 1.
fn smooth_numbers(primes: &[u64], bound: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for &p in primes {
        let mut grown = Vec::new();
        for &v in &out {
            let mut w = v;
            while w <= bound / p {
                w *= p;
                grown.push(w);
            }
        }
        out.extend(grown);
    }
    out
}

fn two_pow_omega(sieve: &SieveTable, n: u64) -> i64 {
    1i64 << sieve.omega_unchecked(n)
}

pub fn le2(q: u64, x: u64, sieve: &SieveTable) -> Result<(Int, Int)> {
    check_qx(q, x, sieve)?;
    let lhs: i64 = (1..=x)
        .filter(|&n| is_coprime(n, q))
        .map(|n| sieve.mobius_unchecked(n) as i64 * (x / n) as i64)
        .sum();
    let rhs = crate::arith::smooth_support_count(q, x);
    Ok((lhs.into(), rhs.into()))
}

pub fn le5(q: u64, x: u64, sieve: &SieveTable) -> Result<(Int, Int)> {
    check_qx(q, x, sieve)?;
    let mut lhs = 0i64;
    let mut n = q;
    while n <= x {
        let mu = sieve.mobius_unchecked(n) as i64;
        if mu != 0 {
            let primes = sieve.prime_divisors_unchecked(n);
            lhs += mu * smooth_numbers(&primes, x / n).len() as i64;
        }
        n += q;
    }
    let rhs: i64 = (1..=x)
        .filter(|&n| kernel_of(sieve, n) % q == 0)
        .map(|n| {
            if sieve.omega_unchecked(n) % 2 == 0 {
                1
            } else {
                -1
            }
        })
        .sum();
    Ok((lhs.into(), rhs.into()))
}

pub fn le6(n: u64, k: &Rational, sieve: &SieveTable) -> Result<(Rational, Rational)> {
    sieve.check(n)?;
    if k.is_zero() {
        return Err(Error::param("k must be a nonzero rational"));
    }
    let mut lhs = Rational::zero();
    for d in 1..=n {
        if n % d == 0 {
            let mu = sieve.mobius_unchecked(d);
            if mu != 0 {
                lhs += rational_pow(k, sieve.omega_unchecked(d) as i32)?;
            }
        }
    }
    let rhs = rational_pow(&(k + Rational::one()), sieve.omega_unchecked(n) as i32)?;
    Ok((lhs, rhs))
}

pub fn le7(q: u64, k: u32, sieve: &SieveTable) -> Result<(Int, Int)> {
    sieve.check(q)?;
    if k == 0 {
        return Err(Error::param("k must be at least 1"));
    }
    let fact: Factorization = sieve.factorize(q)?;
    if let Some(&(p, _)) = fact.pairs().iter().find(|&&(_, a)| a > 1) {
        return Err(Error::Precondition {
            prime: p,
            reason: format!("q = {q} is not squarefree"),
        });
    }

    // ordered k-tuples with n_1⋯n_k | rem
    fn tuples(k: u32, rem: u64, sieve: &SieveTable) -> u64 {
        if k == 0 {
            return 1;
        }
        (1..=rem)
            .filter(|d| rem % d == 0)
            .map(|d| {
                let mu = sieve.mobius_unchecked(d) as i64;
                (mu * mu) as u64 * tuples(k - 1, rem / d, sieve)
            })
            .sum()
    }
    let lhs = tuples(k, q, sieve);
    let rhs = Int::from(k + 1).pow(fact.omega());
    Ok((lhs.into(), rhs))
}

pub fn le8(q: u64, x: u64, sieve: &SieveTable) -> Result<(Int, Int)> {
    check_qx(q, x, sieve)?;
    let lhs: i64 = (1..=x)
        .filter(|&n| is_coprime(n, q))
        .map(|n| (sieve.mobius_unchecked(n) as i64).pow(2) * (x / n) as i64)
        .sum();
    let mut rhs = 0i64;
    for b in smooth_numbers(&trial_prime_divisors(q), x) {
        rhs += (1..=x / b)
            .filter(|&a| is_coprime(a, q))
            .map(|a| two_pow_omega(sieve, a))
            .sum::<i64>();
    }
    Ok((lhs.into(), rhs.into()))
}

pub fn le9(q: u64, x: u64, sieve: &SieveTable) -> Result<(Int, Int)> {
    check_qx(q, x, sieve)?;
    let mut lhs = 0i64;
    let mut d = q;
    while d <= x {
        if sieve.mobius_unchecked(d) != 0 {
            let primes = sieve.prime_divisors_unchecked(d);
            for k in smooth_numbers(&primes, x / d) {
                lhs += (1..=x / (k * d))
                    .filter(|&h| is_coprime(h, d))
                    .map(|h| two_pow_omega(sieve, h))
                    .sum::<i64>();
            }
        }
        d += q;
    }
    let mut rhs = 0i64;
    for h in 1..=x {
        let count = (1..=x / h)
            .filter(|&n| {
                let g = kernel_of(sieve, n);
                g % q == 0 && is_coprime(h, g)
            })
            .count() as i64;
        rhs += two_pow_omega(sieve, h) * count;
    }
    Ok((lhs.into(), rhs.into()))
}

pub fn le10(r: u32, x: u64, sieve: &SieveTable) -> Result<(Int, Int)> {
    if r == 0 || x == 0 {
        return Err(Error::param("r and x must be at least 1"));
    }
    sieve.check(x)?;
    let mut lhs = Int::zero();
    for m in 1..=x {
        let mut inner = Int::zero();
        for n in 1..=x / m {
            if is_coprime(m, kernel_of(sieve, n)) {
                inner += Int::from(r).pow(sieve.omega_unchecked(n));
            }
        }
        lhs += inner * two_pow_omega(sieve, m);
    }
    let rhs: Int = pow_omega_sum(r as i64 + 2, x, sieve)?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational;
    use crate::arith::build_sieve;

    #[test]
    fn examples() {
        let s = build_sieve(200).unwrap();
        assert_eq!(le2(2, 10, &s).unwrap(), (4.into(), 4.into()));
        assert_eq!(
            le6(12, &rational(2, 1), &s).unwrap(),
            (rational(9, 1), rational(9, 1))
        );
        assert_eq!(le7(6, 2, &s).unwrap(), (9.into(), 9.into()));
        assert_eq!(le10(1, 1, &s).unwrap(), (1.into(), 1.into()));
    }

    #[test]
    fn le7_rejects_non_squarefree() {
        let s = build_sieve(200).unwrap();
        assert!(matches!(
            le7(12, 2, &s),
            Err(Error::Precondition { prime: 2, .. })
        ));
    }

    #[test]
    fn parse_ids() {
        assert_eq!("le9".parse::<LemmaId>().unwrap(), LemmaId::Le9);
        assert_eq!("lemma.le10".parse::<LemmaId>().unwrap(), LemmaId::Le10);
        assert!("le3".parse::<LemmaId>().is_err());
    }

    #[test]
    fn smooth_enumeration() {
        let mut v = smooth_numbers(&[2, 3], 12);
        v.sort();
        assert_eq!(v, vec![1, 2, 3, 4, 6, 8, 9, 12]);
        assert_eq!(smooth_numbers(&[], 100), vec![1]);
    }

    #[test]
    fn small_grids() {
        let s = build_sieve(60).unwrap();
        for q in 1..=12 {
            for x in 1..=60 {
                for f in [le2, le5, le8, le9] {
                    let (l, r) = f(q, x, &s).unwrap();
                    assert_eq!(l, r, "q={q} x={x}");
                }
            }
        }
        for n in 1..=60 {
            for k in [
                rational(1, 2),
                rational(-2, 3),
                rational(-1, 1),
                rational(3, 1),
            ] {
                let (l, r) = le6(n, &k, &s).unwrap();
                assert_eq!(l, r, "n={n} k={k}");
            }
        }
    }
}
