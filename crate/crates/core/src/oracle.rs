//! Deliberately naive reference implementations.
//!
//! Nothing here touches the sieve or the pruned enumerators: factorization is
//! trial division, divisor sums enumerate every divisor, and grid sums visit
//! every tuple of `[1, x]^r`.

use std::ops::{Add, Mul};

use num_traits::Zero;

use crate::arith::Factorization;
use crate::error::{Error, Result};
use crate::identities::WeightKind;
use crate::Int;

/// Largest `x^r` the unpruned grid oracle accepts.
pub const GRID_GUARD: u64 = 100_000_000;

/// Largest argument accepted by the divisor-enumeration oracles.
pub const DIVISOR_GUARD: u64 = 10_000_000;

pub fn naive_factorize(mut n: u64) -> Factorization {
    assert!(n >= 1, "naive_factorize needs n >= 1");
    let mut pairs = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        let mut a = 0;
        while n % d == 0 {
            n /= d;
            a += 1;
        }
        if a > 0 {
            pairs.push((d, a));
        }
        d += 1;
    }
    if n > 1 {
        pairs.push((n, 1));
    }
    Factorization::from_sorted_pairs(pairs)
}

pub fn naive_mobius(n: u64) -> i8 {
    let f = naive_factorize(n);
    if f.pairs().iter().any(|&(_, a)| a > 1) {
        0
    } else if f.pairs().len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn naive_omega(n: u64) -> u32 {
    naive_factorize(n).pairs().len() as u32
}

pub fn naive_kernel(n: u64) -> u64 {
    naive_factorize(n).pairs().iter().map(|&(p, _)| p).product()
}

/// All divisors of `n`, ascending, by trial division up to `√n`.
pub fn naive_divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `(f ⋆ g)(n) = Σ_{d | n} f(d) g(n/d)`.
pub fn naive_convolve<V, F, G>(f: F, g: G, n: u64) -> V
where
    V: Zero + Add<Output = V> + Mul<Output = V>,
    F: Fn(u64) -> V,
    G: Fn(u64) -> V,
{
    naive_divisors(n)
        .into_iter()
        .fold(V::zero(), |acc, d| acc + f(d) * g(n / d))
}

/// τ_k by repeated self-convolution of the constant function 1.
pub fn naive_tau_k(n: u64, k: u32) -> u64 {
    match k {
        0 => u64::from(n == 1),
        1 => 1,
        _ => naive_convolve(|d| naive_tau_k(d, k - 1), |_| 1u64, n),
    }
}

pub fn naive_phi(n: u64) -> u64 {
    naive_convolve(|d| naive_mobius(d) as i64, |m| m as i64, n) as u64
}

pub fn naive_sigma(n: u64) -> u64 {
    naive_divisors(n).into_iter().sum()
}

/// `J_k = μ ⋆ id^k`.
pub fn naive_jordan(n: u64, k: u32) -> i128 {
    naive_convolve(|d| naive_mobius(d) as i128, |m| (m as i128).pow(k), n)
}

/// `Ψ_k = μ² ⋆ id^k`.
pub fn naive_dedekind(n: u64, k: u32) -> i128 {
    naive_convolve(
        |d| (naive_mobius(d) as i128).pow(2),
        |m| (m as i128).pow(k),
        n,
    )
}

/// Literal `r`-fold loop over `[1, x]^r`.
///
/// For [`WeightKind::AdditiveF`] the caller supplies `f(n)` for `n ≤ x`; the
/// summand is `(f(n_1) + ⋯ + f(n_r))⌊x/(n_1⋯n_r)⌋`.
pub fn naive_grid_sum(
    kind: WeightKind,
    r: u32,
    x: u64,
    f: Option<&dyn Fn(u64) -> i64>,
) -> Result<Int> {
    if r == 0 || x == 0 {
        return Err(Error::param("naive_grid_sum needs r >= 1 and x >= 1"));
    }
    let cells = (x as u128).checked_pow(r).unwrap_or(u128::MAX);
    if cells > GRID_GUARD as u128 {
        return Err(Error::Capacity(format!(
            "x^r = {x}^{r} exceeds the oracle guard {GRID_GUARD}"
        )));
    }
    if kind == WeightKind::AdditiveF && f.is_none() {
        return Err(Error::param("additive weight needs f"));
    }
    let mu: Vec<i64> = (0..=x)
        .map(|n| if n == 0 { 0 } else { naive_mobius(n) as i64 })
        .collect();
    let fvals: Vec<i64> = match f {
        Some(f) => (0..=x).map(|n| if n == 0 { 0 } else { f(n) }).collect(),
        None => Vec::new(),
    };

    let r = r as usize;
    let mut tuple = vec![1u64; r];
    let mut total: i128 = 0;
    loop {
        let prod = tuple.iter().try_fold(1u64, |acc, &n| acc.checked_mul(n));
        let floor = prod.map_or(0, |p| x / p);
        let term = if floor == 0 {
            0
        } else {
            let p = prod.unwrap() as usize;
            match kind {
                WeightKind::MobiusProduct => mu[p] as i128 * floor as i128,
                WeightKind::MobiusSquareProduct => (mu[p] * mu[p]) as i128 * floor as i128,
                WeightKind::AdditiveF => {
                    let s: i128 = tuple.iter().map(|&n| fvals[n as usize] as i128).sum();
                    s * floor as i128
                }
            }
        };
        total += term;

        // odometer increment
        let mut i = 0;
        loop {
            if i == r {
                return Ok(Int::from(total));
            }
            if tuple[i] < x {
                tuple[i] += 1;
                break;
            }
            tuple[i] = 1;
            i += 1;
        }
    }
}

/// `Σ_{d | n} μ(d)^e f(d) ln d` in double precision.
pub fn naive_divisor_log_sum_float(n: u64, e: u32, f: &dyn Fn(u64) -> f64) -> f64 {
    assert!(
        n <= DIVISOR_GUARD,
        "naive_divisor_log_sum_float guard exceeded"
    );
    naive_divisors(n)
        .into_iter()
        .map(|d| (naive_mobius(d) as f64).powi(e as i32) * f(d) * (d as f64).ln())
        .sum()
}

/// Floating-point version of the weight `f` used by each closed-form line of
/// the log-divisor-sum closed forms, built from the naive functions above.
pub fn naive_closed_form_weight(line: u32, k: u32) -> Box<dyn Fn(u64) -> f64> {
    match line {
        1 | 2 => Box::new(move |d| (d as f64).powi(-(k as i32))),
        3 => Box::new(|d| 1.0 / naive_phi(d) as f64),
        4 => Box::new(|d| 1.0 / naive_tau_k(d, 2) as f64),
        5 => Box::new(move |d| naive_tau_k(d, k) as f64),
        6 => Box::new(|d| naive_sigma(d) as f64),
        _ => panic!("closed-form line {line} does not exist"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_examples() {
        assert_eq!(naive_mobius(30), -1);
        assert_eq!(naive_kernel(72), 6);
        assert_eq!(naive_omega(1), 0);
        assert_eq!(naive_factorize(1).pairs(), &[]);
        assert_eq!(naive_divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(naive_divisors(1), vec![1]);
    }

    #[test]
    fn tau_examples() {
        assert_eq!(naive_tau_k(6, 2), 4);
        assert_eq!(naive_tau_k(4, 3), 6);
        assert_eq!(naive_tau_k(1, 5), 1);
    }

    #[test]
    fn mobius_is_inverse_of_one() {
        for n in 1..=10_000u64 {
            let v: i64 = naive_convolve(|d| naive_mobius(d) as i64, |_| 1, n);
            assert_eq!(v, i64::from(n == 1), "n={n}");
        }
    }

    #[test]
    fn totients() {
        assert_eq!(naive_phi(36), 12);
        assert_eq!(naive_sigma(12), 28);
        assert_eq!(naive_jordan(6, 2), 24);
        assert_eq!(naive_dedekind(6, 2), 50);
    }

    #[test]
    fn grid_examples() {
        let mu = |n: u64| naive_mobius(n) as i64;
        assert_eq!(
            naive_grid_sum(WeightKind::MobiusProduct, 2, 3, None).unwrap(),
            Int::from(-1)
        );
        assert_eq!(
            naive_grid_sum(WeightKind::MobiusSquareProduct, 2, 3, None).unwrap(),
            Int::from(7)
        );
        assert_eq!(
            naive_grid_sum(WeightKind::AdditiveF, 2, 1, Some(&mu)).unwrap(),
            Int::from(2)
        );
        assert_eq!(
            naive_grid_sum(WeightKind::AdditiveF, 2, 3, Some(&mu)).unwrap(),
            Int::from(6)
        );
        assert!(matches!(
            naive_grid_sum(WeightKind::MobiusProduct, 3, 465, None),
            Err(Error::Capacity(_))
        ));
        assert!(naive_grid_sum(WeightKind::AdditiveF, 2, 3, None).is_err());
    }

    #[test]
    fn float_log_sum() {
        let inv_id = |d: u64| 1.0 / d as f64;
        assert!((naive_divisor_log_sum_float(6, 1, &inv_id) + 0.4141511083).abs() < 1e-9);
        assert_eq!(naive_divisor_log_sum_float(1, 1, &inv_id), 0.0);
    }
}
