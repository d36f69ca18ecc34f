//! Squarefree-pruned grid sums and their sieve-sum counterparts.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{GridSumSpec, WeightKind};
use crate::algebra::to_integer;
use crate::arith::{pow_omega_sum, SieveTable};
use crate::error::{Error, Result};
use crate::scalar::{from_i128, ExactInt};
use crate::Rational;

/// `Σ_{n ≤ x} μ(n)⌊x/n⌋`, which equals 1 for every `x ≥ 1`.
pub fn classic_mertens_floor<T: ExactInt>(x: u64, sieve: &SieveTable) -> Result<T> {
    if x == 0 {
        return Err(Error::param("x must be at least 1"));
    }
    sieve.check(x)?;
    let total: i128 = (1..=x)
        .map(|n| sieve.mobius_unchecked(n) as i128 * (x / n) as i128)
        .sum();
    from_i128(total, "classic_mertens_floor")
}

/// `Σ_{n ≤ x} μ(n)⌊x/n⌋` for every `x ∈ [1, x_max]`, indexed by `x − 1`.
///
/// Uses `⌊x/n⌋ − ⌊(x−1)/n⌋ = [n | x]`, so consecutive values differ by
/// `Σ_{n | x} μ(n)`, accumulated by walking the multiples of each `n`.
pub fn classic_mertens_floor_range<T: ExactInt>(x_max: u64, sieve: &SieveTable) -> Result<Vec<T>> {
    if x_max == 0 {
        return Err(Error::param("x must be at least 1"));
    }
    sieve.check(x_max)?;
    let len = x_max as usize;
    let mut step = vec![0i64; len + 1];
    for n in 1..=len {
        let mu = sieve.mobius_unchecked(n as u64) as i64;
        if mu != 0 {
            for m in (n..=len).step_by(n) {
                step[m] += mu;
            }
        }
    }
    let mut acc = 0i128;
    step[1..]
        .iter()
        .map(|&d| {
            acc += d as i128;
            from_i128(acc, "classic_mertens_floor_range")
        })
        .collect()
}

/// Tuple enumerator over `(n_1, …, n_r)` whose product is squarefree,
/// so the `n_i` are squarefree and pairwise coprime.
struct CoprimeWalk<'a> {
    sieve: &'a SieveTable,
    x: u64,
    signed: bool,
}

impl CoprimeWalk<'_> {
    /// `n` squarefree and coprime to the squarefree `prod`; returns `μ(n)`.
    #[inline]
    fn admissible(&self, n: u64, prod: u64) -> Option<i8> {
        let mu = self.sieve.mobius_unchecked(n);
        if mu == 0 {
            return None;
        }
        if prod > 1 {
            let mut m = n;
            while m > 1 {
                let p = self.sieve.spf_unchecked(m);
                if prod % p == 0 {
                    return None;
                }
                m /= p;
            }
        }
        Some(mu)
    }

    fn weight(&self, sign: i8) -> i128 {
        if self.signed {
            sign as i128
        } else {
            1
        }
    }

    /// Sum over the remaining `levels` variables given the running squarefree
    /// product `prod` and its Möbius sign.
    fn walk(&self, levels: u32, prod: u64, sign: i8) -> i128 {
        let bound = self.x / prod;
        if levels == 1 {
            let mut acc = 0i128;
            for n in 1..=bound {
                if let Some(mu) = self.admissible(n, prod) {
                    acc += self.weight(sign * mu) * (bound / n) as i128;
                }
            }
            return acc;
        }
        let mut acc = 0i128;
        for n in 1..=bound {
            if n == 1 {
                acc += self.walk(levels - 1, prod, sign);
            } else if let Some(mu) = self.admissible(n, prod) {
                acc += self.walk(levels - 1, prod * n, sign * mu);
            }
        }
        acc
    }

    fn total(&self, r: u32) -> i128 {
        if r == 1 {
            return self.walk(1, 1, 1);
        }
        (1..=self.x)
            .into_par_iter()
            .map(|n| match self.admissible(n, 1) {
                Some(mu) => self.walk(r - 1, n, mu),
                None => 0,
            })
            .sum()
    }
}

fn check_rx(r: u32, x: u64, sieve: &SieveTable) -> Result<()> {
    if r < 2 {
        return Err(Error::param(format!("r must be at least 2 (got {r})")));
    }
    if x == 0 {
        return Err(Error::param("x must be at least 1"));
    }
    sieve.check(x)
}

/// `Σ_{n_i ≤ x} μ(n_1⋯n_r)⌊x/(n_1⋯n_r)⌋` by pruned enumeration.
pub fn th1_lhs<T: ExactInt>(r: u32, x: u64, sieve: &SieveTable) -> Result<T> {
    check_rx(r, x, sieve)?;
    let walk = CoprimeWalk {
        sieve,
        x,
        signed: true,
    };
    from_i128(walk.total(r), "th1_lhs")
}

/// `Σ_{n ≤ x} (1 − r)^{ω(n)}`.
pub fn th1_rhs<T: ExactInt>(r: u32, x: u64, sieve: &SieveTable) -> Result<T> {
    check_rx(r, x, sieve)?;
    pow_omega_sum(1 - r as i64, x, sieve)
}

/// `Σ_{n_i ≤ x} μ(n_1⋯n_r)²⌊x/(n_1⋯n_r)⌋` by pruned enumeration.
pub fn th15_lhs<T: ExactInt>(r: u32, x: u64, sieve: &SieveTable) -> Result<T> {
    check_rx(r, x, sieve)?;
    let walk = CoprimeWalk {
        sieve,
        x,
        signed: false,
    };
    from_i128(walk.total(r), "th15_lhs")
}

/// `Σ_{n ≤ x} (1 + r)^{ω(n)}`.
pub fn th15_rhs<T: ExactInt>(r: u32, x: u64, sieve: &SieveTable) -> Result<T> {
    check_rx(r, x, sieve)?;
    pow_omega_sum(1 + r as i64, x, sieve)
}

/// Evaluates the grid sum described by `spec`.
pub fn grid_sum<T: ExactInt>(spec: &GridSumSpec, sieve: &SieveTable) -> Result<T> {
    match spec.weight() {
        WeightKind::MobiusProduct => th1_lhs(spec.r(), spec.x(), sieve),
        WeightKind::MobiusSquareProduct => th15_lhs(spec.r(), spec.x(), sieve),
        WeightKind::AdditiveF => {
            let f = spec
                .f()
                .ok_or_else(|| Error::param("additive weight needs f"))?;
            let table = f.integer_table(spec.x(), sieve)?;
            let table: Vec<T> = table
                .iter()
                .map(|v| {
                    T::from_i128(i128::try_from(v).map_err(|_| Error::Overflow("grid_sum"))?)
                        .ok_or(Error::Overflow("grid_sum"))
                })
                .collect::<Result<_>>()?;
            super::th2_lhs(spec.r(), spec.x(), &table)
        }
    }
}

/// `Σ_{1 ≤ n_1 < ⋯ < n_r ≤ x} μ(n_1⋯n_r)⌊x/(n_1⋯n_r)⌋`.
pub fn ordered_lhs<T: ExactInt>(r: u32, x: u64, sieve: &SieveTable) -> Result<T> {
    check_rx(r, x, sieve)?;
    let walk = CoprimeWalk {
        sieve,
        x,
        signed: true,
    };

    fn fits(prod: u64, n: u64, rem: u32, x: u64) -> bool {
        // prod · n · (n+1) ⋯ (n+rem−1) ≤ x
        let mut acc = prod as u128;
        for i in 0..rem as u64 {
            acc *= (n + i) as u128;
            if acc > x as u128 {
                return false;
            }
        }
        true
    }

    fn go(w: &CoprimeWalk<'_>, start: u64, rem: u32, prod: u64, sign: i8) -> i128 {
        if rem == 0 {
            return sign as i128 * (w.x / prod) as i128;
        }
        let mut acc = 0i128;
        let mut n = start;
        while fits(prod, n, rem, w.x) {
            if n == 1 {
                acc += go(w, 2, rem - 1, prod, sign);
            } else if let Some(mu) = w.admissible(n, prod) {
                acc += go(w, n + 1, rem - 1, prod * n, sign * mu);
            }
            n += 1;
        }
        acc
    }

    let firsts: Vec<u64> = (1..=x).take_while(|&n| fits(1, n, r, x)).collect();
    let total: i128 = firsts
        .into_par_iter()
        .map(|n1| {
            if n1 == 1 {
                go(&walk, 2, r - 1, 1, 1)
            } else {
                match walk.admissible(n1, 1) {
                    Some(mu) => go(&walk, n1 + 1, r - 1, n1, mu),
                    None => 0,
                }
            }
        })
        .sum();
    from_i128(total, "ordered_lhs")
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Closed form for the strictly ordered sum in terms of `Σ (1 − r + j)^{ω(n)}`:
///
/// ```text
/// (1/r!)·S_r − (1/r!)·Σ_{j=2}^{r−2} (−1)^j (j−1) C(r,j) Σ_{n≤x} (1−r+j)^{ω(n)}
///   − (−1)^r ⌊x⌋ / (r (r−2)!) + (−1)^r (r−2) / (r−1)!
/// ```
///
/// where `S_r = Σ_{n≤x} (1 − r)^{ω(n)}` is the full grid sum.
pub fn combinatoric_rhs<T: ExactInt>(r: u32, x: u64, sieve: &SieveTable) -> Result<T> {
    check_rx(r, x, sieve)?;
    let r_fact = factorial(r);
    let sign_r: i64 = if r % 2 == 0 { 1 } else { -1 };
    let full: BigInt = th1_rhs(r, x, sieve)?;
    let mut value = Rational::new(full, r_fact.clone());
    for j in 2..=r.saturating_sub(2) {
        let s_j: BigInt = pow_omega_sum(1 - r as i64 + j as i64, x, sieve)?;
        let sign_j: i64 = if j % 2 == 0 { 1 } else { -1 };
        let coeff =
            BigInt::from(sign_j * (j as i64 - 1)) * binomial(BigInt::from(r), BigInt::from(j));
        value -= Rational::new(coeff * s_j, r_fact.clone());
    }
    value -= Rational::new(
        BigInt::from(sign_r) * BigInt::from(x),
        BigInt::from(r) * factorial(r - 2),
    );
    value += Rational::new(BigInt::from(sign_r * (r as i64 - 2)), factorial(r - 1));

    let int = to_integer(&value).ok_or_else(|| {
        Error::Invariant(format!(
            "combinatoric_rhs({r}, {x}) = {value} is not an integer"
        ))
    })?;
    if int.is_zero() {
        return Ok(T::zero());
    }
    i128::try_from(&int)
        .ok()
        .and_then(T::from_i128)
        .ok_or(Error::Overflow("combinatoric_rhs"))
}
