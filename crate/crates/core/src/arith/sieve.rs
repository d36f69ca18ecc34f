use crate::error::{Error, Result};

use super::factor::Factorization;

/// Largest sieve limit accepted unless a caller raises the cap explicitly.
pub const DEFAULT_SIEVE_CAP: u64 = 100_000_000;

/// Smallest-prime-factor table built by a linear (Euler) sieve.
///
/// `spf[1] = 1`; index 0 is unused. The Möbius and ω caches are filled in the
/// same pass when requested.
#[derive(Debug, Clone)]
pub struct SieveTable {
    limit: u64,
    spf: Vec<u32>,
    primes: Vec<u32>,
    mu: Option<Vec<i8>>,
    omega: Option<Vec<u8>>,
}

#[derive(Debug, Clone, Copy)]
pub struct SieveOptions {
    pub cap: u64,
    pub mobius: bool,
    pub omega: bool,
}

impl Default for SieveOptions {
    fn default() -> Self {
        Self {
            cap: DEFAULT_SIEVE_CAP,
            mobius: true,
            omega: true,
        }
    }
}

/// Builds a sieve with both caches and the default memory cap.
pub fn build_sieve(limit: u64) -> Result<SieveTable> {
    SieveTable::with_options(limit, SieveOptions::default())
}

impl SieveTable {
    pub fn new(limit: u64) -> Result<Self> {
        build_sieve(limit)
    }

    pub fn with_options(limit: u64, opts: SieveOptions) -> Result<Self> {
        if limit == 0 {
            return Err(Error::Capacity("sieve limit must be at least 1".into()));
        }
        if limit > opts.cap || limit > u32::MAX as u64 {
            return Err(Error::Capacity(format!(
                "sieve limit {limit} exceeds cap {}",
                opts.cap.min(u32::MAX as u64)
            )));
        }
        let n = limit as usize;
        let mut spf = vec![0u32; n + 1];
        let mut primes: Vec<u32> = Vec::new();
        let mut mu = opts.mobius.then(|| vec![0i8; n + 1]);
        let mut omega = opts.omega.then(|| vec![0u8; n + 1]);
        spf[1] = 1;
        if let Some(mu) = mu.as_mut() {
            mu[1] = 1;
        }

        for i in 2..=n {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
                if let Some(mu) = mu.as_mut() {
                    mu[i] = -1;
                }
                if let Some(om) = omega.as_mut() {
                    om[i] = 1;
                }
            }
            let si = spf[i];
            for &p in &primes {
                if p > si {
                    break;
                }
                let t = i * p as usize;
                if t > n {
                    break;
                }
                spf[t] = p;
                if p == si {
                    // p already divides i
                    if let Some(mu) = mu.as_mut() {
                        mu[t] = 0;
                    }
                    if let Some(om) = omega.as_mut() {
                        om[t] = om[i];
                    }
                } else {
                    if let Some(mu) = mu.as_mut() {
                        mu[t] = -mu[i];
                    }
                    if let Some(om) = omega.as_mut() {
                        om[t] = om[i] + 1;
                    }
                }
            }
        }

        Ok(Self {
            limit,
            spf,
            primes,
            mu,
            omega,
        })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    pub fn has_mobius_cache(&self) -> bool {
        self.mu.is_some()
    }

    pub fn has_omega_cache(&self) -> bool {
        self.omega.is_some()
    }

    #[inline]
    pub fn check(&self, n: u64) -> Result<()> {
        if n == 0 || n > self.limit {
            Err(Error::Range {
                value: n,
                limit: self.limit,
            })
        } else {
            Ok(())
        }
    }

    /// Smallest prime factor of `n`, with `spf(1) = 1`.
    pub fn spf(&self, n: u64) -> Result<u64> {
        self.check(n)?;
        Ok(self.spf[n as usize] as u64)
    }

    #[inline]
    pub(crate) fn spf_unchecked(&self, n: u64) -> u64 {
        self.spf[n as usize] as u64
    }

    pub fn is_prime(&self, n: u64) -> Result<bool> {
        self.check(n)?;
        Ok(n >= 2 && self.spf[n as usize] as u64 == n)
    }

    pub fn factorize(&self, n: u64) -> Result<Factorization> {
        self.check(n)?;
        Ok(self.factorize_unchecked(n))
    }

    pub(crate) fn factorize_unchecked(&self, mut n: u64) -> Factorization {
        let mut pairs = Vec::new();
        while n > 1 {
            let p = self.spf_unchecked(n);
            let mut a = 0u32;
            while n % p == 0 {
                n /= p;
                a += 1;
            }
            pairs.push((p, a));
        }
        Factorization::from_sorted_pairs(pairs)
    }

    /// Distinct prime divisors of `n` in increasing order.
    pub(crate) fn prime_divisors_unchecked(&self, mut n: u64) -> Vec<u64> {
        let mut out = Vec::new();
        while n > 1 {
            let p = self.spf_unchecked(n);
            while n % p == 0 {
                n /= p;
            }
            out.push(p);
        }
        out
    }

    pub fn mobius(&self, n: u64) -> Result<i8> {
        self.check(n)?;
        Ok(self.mobius_unchecked(n))
    }

    #[inline]
    pub(crate) fn mobius_unchecked(&self, n: u64) -> i8 {
        match &self.mu {
            Some(mu) => mu[n as usize],
            None => self.factorize_unchecked(n).mobius(),
        }
    }

    pub fn omega(&self, n: u64) -> Result<u32> {
        self.check(n)?;
        Ok(self.omega_unchecked(n))
    }

    #[inline]
    pub(crate) fn omega_unchecked(&self, n: u64) -> u32 {
        match &self.omega {
            Some(om) => om[n as usize] as u32,
            None => self.factorize_unchecked(n).omega(),
        }
    }

    /// Squarefree kernel: the product of the distinct primes dividing `n`.
    pub fn kernel(&self, n: u64) -> Result<u64> {
        self.check(n)?;
        Ok(self.prime_divisors_unchecked(n).into_iter().product())
    }

    /// Counts of `n <= x` grouped by ω(n); entry `k` holds `#{n <= x : ω(n) = k}`.
    pub fn omega_histogram(&self, x: u64) -> Result<Vec<u64>> {
        self.check(x)?;
        let mut hist = vec![0u64; 1];
        match &self.omega {
            Some(om) => {
                for &w in &om[1..=x as usize] {
                    let w = w as usize;
                    if w >= hist.len() {
                        hist.resize(w + 1, 0);
                    }
                    hist[w] += 1;
                }
            }
            None => {
                for n in 1..=x {
                    let w = self.factorize_unchecked(n).omega() as usize;
                    if w >= hist.len() {
                        hist.resize(w + 1, 0);
                    }
                    hist[w] += 1;
                }
            }
        }
        Ok(hist)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_table() {
        let s = build_sieve(10).unwrap();
        let spf: Vec<u64> = (1..=10).map(|n| s.spf(n).unwrap()).collect();
        assert_eq!(spf, vec![1, 2, 3, 2, 5, 2, 7, 2, 3, 2]);
        assert_eq!(s.primes(), &[2, 3, 5, 7]);
    }

    #[test]
    fn degenerate_limit() {
        let s = build_sieve(1).unwrap();
        assert_eq!(s.spf(1).unwrap(), 1);
        assert!(s.primes().is_empty());
        assert_eq!(s.mobius(1).unwrap(), 1);
        assert_eq!(s.omega(1).unwrap(), 0);
    }

    #[test]
    fn capacity_errors() {
        assert!(matches!(build_sieve(0), Err(Error::Capacity(_))));
        let opts = SieveOptions {
            cap: 100,
            ..Default::default()
        };
        assert!(matches!(
            SieveTable::with_options(101, opts),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn range_errors() {
        let s = build_sieve(10).unwrap();
        assert_eq!(
            s.mobius(11),
            Err(Error::Range {
                value: 11,
                limit: 10
            })
        );
        assert!(s.factorize(0).is_err());
    }

    #[test]
    fn largest_prime_below_million() {
        let s = build_sieve(1_000_000).unwrap();
        // trial division
        let p = 999_983u64;
        assert!((2..).take_while(|d| d * d <= p).all(|d| p % d != 0));
        assert_eq!(s.spf(p).unwrap(), p);
        assert_eq!(*s.primes().last().unwrap() as u64, p);
    }

    #[test]
    fn basic_values() {
        let s = build_sieve(100).unwrap();
        assert_eq!(
            (
                s.mobius(6).unwrap(),
                s.omega(6).unwrap(),
                s.kernel(6).unwrap()
            ),
            (1, 2, 6)
        );
        assert_eq!((s.mobius(12).unwrap(), s.kernel(12).unwrap()), (0, 6));
        assert_eq!(
            (
                s.mobius(1).unwrap(),
                s.omega(1).unwrap(),
                s.kernel(1).unwrap()
            ),
            (1, 0, 1)
        );
    }

    #[test]
    fn caches_match_factorization() {
        let full = build_sieve(5000).unwrap();
        let bare = SieveTable::with_options(
            5000,
            SieveOptions {
                mobius: false,
                omega: false,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(!bare.has_mobius_cache());
        for n in 1..=5000 {
            assert_eq!(full.mobius(n).unwrap(), bare.mobius(n).unwrap(), "mu({n})");
            assert_eq!(full.omega(n).unwrap(), bare.omega(n).unwrap(), "omega({n})");
        }
        assert_eq!(full.omega_histogram(5000), bare.omega_histogram(5000));
    }
}
