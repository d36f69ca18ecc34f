//! `Σ_{d | n} μ(d)^e f(d) log d` for multiplicative `f`, its product closed
//! form, and the six specialized closed forms.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::PrimeLogCombo;
use crate::arith::{classical_fn, named, ClassicalKind, SieveTable};
use crate::error::{Error, Result};
use crate::{LogCombo, Rational, RationalFn};

/// Exponent of `μ(d)` in the divisor sum: 1 (signed) or 2 (squarefree indicator).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MobiusPower {
    One,
    Two,
}

impl MobiusPower {
    pub fn new(e: u32) -> Result<Self> {
        match e {
            1 => Ok(Self::One),
            2 => Ok(Self::Two),
            _ => Err(Error::param(format!("e must be 1 or 2 (got {e})"))),
        }
    }

    pub fn get(self) -> u32 {
        match self {
            Self::One => 1,
            Self::Two => 2,
        }
    }

    /// `(−1)^e`.
    fn sign(self) -> Rational {
        match self {
            Self::One => -Rational::one(),
            Self::Two => Rational::one(),
        }
    }
}

/// Direct divisor sum over the squarefree divisors of `n`.
pub fn th3_lhs(n: u64, e: MobiusPower, f: &RationalFn, sieve: &SieveTable) -> Result<LogCombo> {
    sieve.check(n)?;
    let primes = sieve.prime_divisors_unchecked(n);
    let fp: Vec<Rational> = primes.iter().map(|&p| f.at_prime(p)).collect();
    let mut out = LogCombo::zero();
    for mask in 1u32..(1u32 << primes.len()) {
        let size = mask.count_ones();
        let mut fd = Rational::one();
        for (i, v) in fp.iter().enumerate() {
            if mask & (1 << i) != 0 {
                fd *= v;
            }
        }
        if e == MobiusPower::One && size % 2 == 1 {
            fd = -fd;
        }
        // log d = Σ_{p | d} log p
        for (i, &p) in primes.iter().enumerate() {
            if mask & (1 << i) != 0 {
                out.add_term(p, fd.clone());
            }
        }
    }
    Ok(out)
}

/// `Π_{p|n} (1 + (−1)^e f(p)) · Σ_{p|n} f(p) log p / (f(p) + (−1)^e)`.
///
/// Requires `f(p) ≠ (−1)^{e+1}` for every `p | n`.
pub fn th3_rhs(n: u64, e: MobiusPower, f: &RationalFn, sieve: &SieveTable) -> Result<LogCombo> {
    sieve.check(n)?;
    let sign = e.sign();
    let mut product = Rational::one();
    let mut sum = LogCombo::zero();
    for p in sieve.prime_divisors_unchecked(n) {
        let fp = f.at_prime(p);
        let denom = &fp + &sign;
        if denom.is_zero() {
            return Err(Error::Precondition {
                prime: p,
                reason: format!(
                    "{}({p}) = {fp} equals (-1)^(e+1) for e = {}",
                    f.name(),
                    e.get()
                ),
            });
        }
        product *= Rational::one() + &sign * &fp;
        sum.add_term(p, fp / denom);
    }
    Ok(sum.scale(&product))
}

/// Weight function and `μ`-exponent belonging to each closed-form line.
pub fn cor9_function(line: u32, k: u32, e: u32) -> Result<(RationalFn, MobiusPower)> {
    check_line(line, k)?;
    Ok(match line {
        1 => (named::inv_id_k(k), MobiusPower::One),
        2 => (named::inv_id_k(k), MobiusPower::Two),
        3 => (named::inv_phi(), MobiusPower::Two),
        4 => (named::inv_tau(), MobiusPower::One),
        5 => (classical_fn(ClassicalKind::TauK, k)?, MobiusPower::new(e)?),
        6 => (classical_fn(ClassicalKind::Sigma, 1)?, MobiusPower::One),
        _ => unreachable!(),
    })
}

fn check_line(line: u32, k: u32) -> Result<()> {
    if !(1..=6).contains(&line) {
        return Err(Error::param(format!(
            "closed-form line must be 1..=6 (got {line})"
        )));
    }
    if k == 0 {
        return Err(Error::param("k must be at least 1"));
    }
    if line == 5 && k < 2 {
        return Err(Error::param("line 5 needs k >= 2"));
    }
    Ok(())
}

fn int(v: impl Into<BigInt>) -> Rational {
    Rational::from_integer(v.into())
}

fn pow(p: u64, k: u32) -> Rational {
    int(num_traits::pow(BigInt::from(p), k as usize))
}

/// Closed form of line `line` evaluated at `n`.
///
/// 1. `−(J_k(n)/n^k) Σ_{p|n} log p/(p^k − 1)`
/// 2. `(Ψ_k(n)/n^k) Σ_{p|n} log p/(p^k + 1)`
/// 3. `(n/φ(n)) Σ_{p|n} log p/p`
/// 4. `−2^{−ω(n)} log γ(n)`
/// 5. `(1 + (−1)^e k)^{ω(n)} · k log γ(n)/(k + (−1)^e)`, `k ≥ 2`
/// 6. `(−1)^{ω(n)} γ(n) (log γ(n) + Σ_{p|n} log p/p)`
///
/// `e` is only consulted by line 5.
pub fn cor9_rhs(line: u32, n: u64, k: u32, e: u32, sieve: &SieveTable) -> Result<LogCombo> {
    check_line(line, k)?;
    sieve.check(n)?;
    let primes = sieve.prime_divisors_unchecked(n);
    let omega = primes.len() as u32;
    let log_kernel = || LogCombo::from_terms(primes.iter().map(|&p| (p, Rational::one())));
    let n_pow_k = pow(n, k);

    let combo = match line {
        1 => {
            let jk = classical_fn(ClassicalKind::Jordan, k)?.eval(n, sieve)?;
            let s = PrimeLogCombo::from_terms(
                primes.iter().map(|&p| (p, (pow(p, k) - int(1)).recip())),
            );
            s.scale(&-(jk / n_pow_k))
        }
        2 => {
            let psi = classical_fn(ClassicalKind::Dedekind, k)?.eval(n, sieve)?;
            let s = PrimeLogCombo::from_terms(
                primes.iter().map(|&p| (p, (pow(p, k) + int(1)).recip())),
            );
            s.scale(&(psi / n_pow_k))
        }
        3 => {
            let phi = classical_fn(ClassicalKind::Phi, 1)?.eval(n, sieve)?;
            let s = PrimeLogCombo::from_terms(primes.iter().map(|&p| (p, int(p).recip())));
            s.scale(&(int(n) / phi))
        }
        4 => {
            let factor = -Rational::new(
                BigInt::one(),
                num_traits::pow(BigInt::from(2), omega as usize),
            );
            log_kernel().scale(&factor)
        }
        5 => {
            let sign = MobiusPower::new(e)?.sign();
            let k = int(k);
            let base = Rational::one() + &sign * &k;
            let factor = num_traits::pow(base, omega as usize) * &k / (&k + &sign);
            log_kernel().scale(&factor)
        }
        6 => {
            let kernel: u64 = primes.iter().product();
            let sign = if omega % 2 == 0 { int(1) } else { int(-1) };
            let s = PrimeLogCombo::from_terms(primes.iter().map(|&p| (p, int(p).recip())));
            (log_kernel() + s).scale(&(sign * int(kernel)))
        }
        _ => unreachable!(),
    };
    Ok(combo)
}
