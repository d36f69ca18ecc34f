//! Grid sums weighted by `f(n_1) + ⋯ + f(n_r)` and the recursion
//! `T_1(x) = Σ_{n≤x} ⌊x/n⌋ (f ⋆ 1)(n)`, `T_k(x) = Σ_{n≤x} T_{k−1}(x/n)`
//! that evaluates them as `r·T_{r−1}(x)`.
//!
//! `f` is passed as a table `f[0..=x]`; `f[0]` is ignored.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::{checked_add, checked_mul, from_u64, ExactInt};

fn check(r: u32, x: u64, len: usize) -> Result<()> {
    if r < 2 {
        return Err(Error::param(format!("r must be at least 2 (got {r})")));
    }
    if x == 0 {
        return Err(Error::param("x must be at least 1"));
    }
    if (len as u64) <= x {
        return Err(Error::param(format!(
            "f table covers 1..={} but x = {x}",
            len.saturating_sub(1)
        )));
    }
    Ok(())
}

/// Number of `k`-tuples of positive integers with product `≤ y`, each
/// weighted by `⌊y / product⌋`, by explicit enumeration.
fn floor_weighted_tuples(k: u32, y: u64) -> u128 {
    if k == 1 {
        return (1..=y).map(|n| (y / n) as u128).sum();
    }
    (1..=y).map(|n| floor_weighted_tuples(k - 1, y / n)).sum()
}

/// `Σ_{n_i ≤ x} (f(n_1) + ⋯ + f(n_r))⌊x/(n_1⋯n_r)⌋`, computed through the
/// symmetry in the variables as `r·Σ f(n_1)⌊x/(n_1⋯n_r)⌋` over tuples with
/// product at most `x`.
pub fn th2_lhs<T: ExactInt>(r: u32, x: u64, f: &[T]) -> Result<T> {
    check(r, x, f.len())?;
    let partials: Vec<Result<T>> = (1..=x)
        .into_par_iter()
        .map(|n1| {
            let count = floor_weighted_tuples(r - 1, x / n1);
            let count = T::from_u128(count).ok_or(Error::Overflow("th2_lhs"))?;
            checked_mul(&f[n1 as usize], &count, "th2_lhs")
        })
        .collect();
    let mut total = T::zero();
    for p in partials {
        total = checked_add(&total, &p?, "th2_lhs")?;
    }
    checked_mul(&from_u64(r as u64, "th2_lhs")?, &total, "th2_lhs")
}

/// Index of the distinct values `⌊x/m⌋`, `m ≥ 1`.
pub(crate) struct FloorValues {
    x: u64,
    root: u64,
    values: Vec<u64>,
}

impl FloorValues {
    pub(crate) fn new(x: u64) -> Self {
        let root = isqrt(x);
        let mut values: Vec<u64> = (1..=root).collect();
        let mut large: Vec<u64> = (1..=root).map(|m| x / m).filter(|&v| v > root).collect();
        large.reverse();
        values.extend(large);
        Self { x, root, values }
    }

    pub(crate) fn values(&self) -> &[u64] {
        &self.values
    }

    /// Position of `v`, which must be of the form `⌊x/m⌋`.
    #[inline]
    pub(crate) fn index(&self, v: u64) -> usize {
        if v <= self.root {
            (v - 1) as usize
        } else {
            self.values.len() - (self.x / v) as usize
        }
    }
}

fn isqrt(x: u64) -> u64 {
    let mut r = (x as f64).sqrt() as u64;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

/// Dirichlet convolution with the constant function 1, in place over `1..len`.
fn convolve_with_one<T: ExactInt>(f: &[T]) -> Result<Vec<T>> {
    let n = f.len();
    let mut out = vec![T::zero(); n];
    for d in 1..n {
        if f[d].is_zero() {
            continue;
        }
        let mut m = d;
        while m < n {
            out[m] = checked_add(&out[m], &f[d], "th2_rhs")?;
            m += d;
        }
    }
    Ok(out)
}

/// `r·T_{r−1}(x)`.
///
/// `T_1(y)` equals the summatory function of `f ⋆ 1 ⋆ 1`; higher levels are
/// memoized on the `O(√x)` distinct values `⌊x/m⌋`, since
/// `⌊⌊x/a⌋/b⌋ = ⌊x/(ab)⌋`.
pub fn th2_rhs<T: ExactInt>(r: u32, x: u64, f: &[T]) -> Result<T> {
    check(r, x, f.len())?;
    let table = &f[..=x as usize];
    let g = convolve_with_one(table)?;
    let h = convolve_with_one(&g)?;
    let mut prefix = Vec::with_capacity(h.len());
    let mut acc = T::zero();
    prefix.push(T::zero());
    for v in h.iter().skip(1) {
        acc = checked_add(&acc, v, "th2_rhs")?;
        prefix.push(acc.clone());
    }

    let floors = FloorValues::new(x);
    let mut level: Vec<T> = floors
        .values()
        .iter()
        .map(|&v| prefix[v as usize].clone())
        .collect();

    for _ in 2..r {
        let next: Result<Vec<T>> = floors
            .values()
            .par_iter()
            .map(|&y| {
                let mut sum = T::zero();
                let mut n = 1u64;
                while n <= y {
                    let q = y / n;
                    let hi = y / q;
                    let count = from_u64::<T>(hi - n + 1, "th2_rhs")?;
                    let term = checked_mul(&count, &level[floors.index(q)], "th2_rhs")?;
                    sum = checked_add(&sum, &term, "th2_rhs")?;
                    n = hi + 1;
                }
                Ok(sum)
            })
            .collect();
        level = next?;
    }

    let top = &level[floors.index(x)];
    checked_mul(&from_u64(r as u64, "th2_rhs")?, top, "th2_rhs")
}
