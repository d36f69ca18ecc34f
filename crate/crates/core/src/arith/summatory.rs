use super::{trial_prime_divisors, SieveTable};
use crate::error::Result;
use crate::scalar::{checked_add, checked_mul, from_u64, ExactInt};
use crate::Int;

/// `Σ_{n ≤ x} z^{ω(n)}` with `0^0 = 1`.
///
/// Counts `n` by ω(n) in one pass, then combines the counts with the powers
/// of `z`. Machine-integer accumulators report overflow as an error.
pub fn pow_omega_sum<T: ExactInt>(z: i64, x: u64, sieve: &SieveTable) -> Result<T> {
    let hist = sieve.omega_histogram(x)?;
    let z = T::from_i64(z).ok_or(crate::Error::Overflow("pow_omega_sum"))?;
    let mut power = T::one();
    let mut total = T::zero();
    for (w, &count) in hist.iter().enumerate() {
        if w > 0 {
            power = checked_mul(&power, &z, "pow_omega_sum")?;
        }
        if count > 0 {
            let term = checked_mul(
                &power,
                &from_u64::<T>(count, "pow_omega_sum")?,
                "pow_omega_sum",
            )?;
            total = checked_add(&total, &term, "pow_omega_sum")?;
        }
    }
    Ok(total)
}

pub fn pow_omega_sum_big(z: i64, x: u64, sieve: &SieveTable) -> Result<Int> {
    pow_omega_sum::<Int>(z, x, sieve)
}

/// Number of `n ≤ x` whose prime factors all divide `q`.
pub fn smooth_support_count(q: u64, x: u64) -> u64 {
    if x == 0 {
        return 0;
    }
    let primes = trial_prime_divisors(q);
    count_smooth(&primes, x)
}

pub(crate) fn count_smooth(primes: &[u64], x: u64) -> u64 {
    fn walk(primes: &[u64], bound: u64) -> u64 {
        // counts products of primes[..] (with multiplicity) that are ≤ bound, including 1
        let mut total = 1;
        for (i, &p) in primes.iter().enumerate() {
            let mut b = bound / p;
            while b >= 1 {
                total += walk(&primes[i + 1..], b);
                b /= p;
            }
        }
        total
    }
    if x == 0 {
        0
    } else {
        walk(primes, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::build_sieve;
    use crate::Error;

    #[test]
    fn pow_omega_examples() {
        let s = build_sieve(1000).unwrap();
        assert_eq!(pow_omega_sum::<i64>(-1, 3, &s).unwrap(), -1);
        assert_eq!(pow_omega_sum::<i64>(3, 3, &s).unwrap(), 7);
        for x in [1, 17, 1000] {
            assert_eq!(pow_omega_sum::<i64>(1, x, &s).unwrap(), x as i64);
            assert_eq!(pow_omega_sum::<i64>(0, x, &s).unwrap(), 1);
        }
        assert_eq!(pow_omega_sum_big(-1, 3, &s).unwrap(), Int::from(-1));
        assert!(pow_omega_sum::<i64>(1, 1001, &s).is_err());
    }

    #[test]
    fn machine_integer_overflow_is_reported() {
        let s = build_sieve(100_000).unwrap();
        // 10^9 ^ 6 overflows i64; the BigInt path does not
        assert_eq!(
            pow_omega_sum::<i64>(1_000_000_000, 100_000, &s),
            Err(Error::Overflow("pow_omega_sum"))
        );
        assert!(pow_omega_sum::<Int>(1_000_000_000, 100_000, &s).is_ok());
    }

    #[test]
    fn two_pow_omega_convolution() {
        // 2^ω = μ² ⋆ 1
        let s = build_sieve(10_000).unwrap();
        for x in (1..=10_000u64).step_by(97).chain([10_000]) {
            let expect: i64 = (1..=x)
                .map(|d| (s.mobius(d).unwrap() as i64).pow(2) * (x / d) as i64)
                .sum();
            assert_eq!(pow_omega_sum::<i64>(2, x, &s).unwrap(), expect, "x={x}");
        }
    }

    #[test]
    fn smooth_examples() {
        assert_eq!(smooth_support_count(2, 10), 4);
        assert_eq!(smooth_support_count(1, 100), 1);
        assert_eq!(smooth_support_count(6, 12), 8);
        assert_eq!(smooth_support_count(12, 12), 8);
        assert_eq!(smooth_support_count(5, 0), 0);
    }

    #[test]
    fn smooth_matches_enumeration() {
        for q in 1..=60u64 {
            let primes = trial_prime_divisors(q);
            for x in [1u64, 7, 50, 300] {
                let brute = (1..=x)
                    .filter(|&n| trial_prime_divisors(n).iter().all(|p| primes.contains(p)))
                    .count() as u64;
                assert_eq!(smooth_support_count(q, x), brute, "q={q} x={x}");
            }
        }
    }
}
