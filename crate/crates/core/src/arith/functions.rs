use std::collections::HashMap;
use std::fmt;
use std::ops::Mul;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

use super::{Factorization, SieveTable};
use crate::algebra::to_integer;
use crate::error::{Error, Result};
use crate::{Rational, RationalFn};

type Rule<V> = Arc<dyn Fn(u64, u32) -> V + Send + Sync>;

/// A multiplicative function given by its values on prime powers.
///
/// `f(1) = 1` and `f(n) = Π f(p^a)` over the factorization of `n`.
/// Prime-power values are memoized.
pub struct MultiplicativeFn<V> {
    name: String,
    rule: Rule<V>,
    memo: Mutex<HashMap<(u64, u32), V>>,
}

impl<V: Clone> Clone for MultiplicativeFn<V> {
    fn clone(&self) -> Self {
        Self {
            name: self.name.clone(),
            rule: Arc::clone(&self.rule),
            memo: Mutex::new(self.memo.lock().expect("memo poisoned").clone()),
        }
    }
}

impl<V> fmt::Debug for MultiplicativeFn<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MultiplicativeFn")
            .field("name", &self.name)
            .finish_non_exhaustive()
    }
}

impl<V> MultiplicativeFn<V>
where
    V: Clone + One + Mul<Output = V>,
{
    pub fn new(
        name: impl Into<String>,
        rule: impl Fn(u64, u32) -> V + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            rule: Arc::new(rule),
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn at_prime_power(&self, p: u64, a: u32) -> V {
        if a == 0 {
            return V::one();
        }
        if let Some(v) = self.memo.lock().expect("memo poisoned").get(&(p, a)) {
            return v.clone();
        }
        let v = (self.rule)(p, a);
        self.memo
            .lock()
            .expect("memo poisoned")
            .insert((p, a), v.clone());
        v
    }

    pub fn at_prime(&self, p: u64) -> V {
        self.at_prime_power(p, 1)
    }

    pub fn eval_factored(&self, fact: &Factorization) -> V {
        fact.pairs()
            .iter()
            .fold(V::one(), |acc, &(p, a)| acc * self.at_prime_power(p, a))
    }

    pub fn eval(&self, n: u64, sieve: &SieveTable) -> Result<V> {
        Ok(self.eval_factored(&sieve.factorize(n)?))
    }

    /// Values `f(0..=x)` with a placeholder `f(0) = 1`.
    pub fn tabulate(&self, x: u64, sieve: &SieveTable) -> Result<Vec<V>> {
        if x > 0 {
            sieve.check(x)?;
        }
        let mut out: Vec<V> = Vec::with_capacity(x as usize + 1);
        out.push(V::one());
        if x >= 1 {
            out.push(V::one());
        }
        for n in 2..=x {
            let p = sieve.spf_unchecked(n);
            let mut m = n;
            let mut a = 0u32;
            while m % p == 0 {
                m /= p;
                a += 1;
            }
            let v = out[m as usize].clone() * self.at_prime_power(p, a);
            out.push(v);
        }
        Ok(out)
    }
}

impl RationalFn {
    /// Values `f(0..=x)` as integers; fails when some value is not integral.
    pub fn integer_table(&self, x: u64, sieve: &SieveTable) -> Result<Vec<BigInt>> {
        let vals = self.tabulate(x, sieve)?;
        let mut out = Vec::with_capacity(vals.len());
        out.push(BigInt::zero());
        for (n, v) in vals.iter().enumerate().skip(1) {
            out.push(to_integer(v).ok_or_else(|| {
                Error::Type(format!("{}({n}) = {v} is not an integer", self.name))
            })?);
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassicalKind {
    /// Piltz divisor function τ_k.
    TauK,
    /// Jordan totient J_k.
    Jordan,
    /// Dedekind totient Ψ_k.
    Dedekind,
    Phi,
    Sigma,
}

fn big(v: u64) -> BigInt {
    BigInt::from(v)
}

fn int(v: BigInt) -> Rational {
    Rational::from_integer(v)
}

pub fn classical_fn(kind: ClassicalKind, k: u32) -> Result<RationalFn> {
    if k == 0 {
        return Err(Error::param("classical functions need k >= 1"));
    }
    Ok(match kind {
        ClassicalKind::TauK => MultiplicativeFn::new(format!("tau_{k}"), move |_, a| {
            let top = big(a as u64 + k as u64 - 1);
            int(binomial(top, big(k as u64 - 1)))
        }),
        ClassicalKind::Jordan => MultiplicativeFn::new(format!("jordan_{k}"), move |p, a| {
            let p = big(p);
            int(num_traits::pow(p.clone(), (a * k) as usize)
                - num_traits::pow(p, ((a - 1) * k) as usize))
        }),
        ClassicalKind::Dedekind => MultiplicativeFn::new(format!("psi_{k}"), move |p, a| {
            let p = big(p);
            int(num_traits::pow(p.clone(), (a * k) as usize)
                + num_traits::pow(p, ((a - 1) * k) as usize))
        }),
        ClassicalKind::Phi => {
            return classical_fn(ClassicalKind::Jordan, 1).map(|f| f.renamed("phi"))
        }
        ClassicalKind::Sigma => MultiplicativeFn::new("sigma", |p, a| {
            let p = big(p);
            int((num_traits::pow(p.clone(), a as usize + 1) - 1u32) / (p - 1u32))
        }),
    })
}

impl<V> MultiplicativeFn<V> {
    fn renamed(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }
}

/// Functions addressable by name from reports and the command line.
pub mod named {
    use super::*;

    pub fn mobius() -> RationalFn {
        MultiplicativeFn::new("mu", |_, a| {
            if a == 1 {
                -Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn one() -> RationalFn {
        MultiplicativeFn::new("one", |_, _| Rational::one())
    }

    pub fn id() -> RationalFn {
        MultiplicativeFn::new("id", |p, a| int(num_traits::pow(big(p), a as usize)))
    }

    /// `n ↦ n^{-k}`.
    pub fn inv_id_k(k: u32) -> RationalFn {
        MultiplicativeFn::new(format!("inv_id_{k}"), move |p, a| {
            int(num_traits::pow(big(p), (a * k) as usize)).recip()
        })
    }

    pub fn inv_phi() -> RationalFn {
        MultiplicativeFn::new("inv_phi", |p, a| {
            let p = big(p);
            int(num_traits::pow(p.clone(), a as usize - 1) * (p - 1u32)).recip()
        })
    }

    pub fn inv_tau() -> RationalFn {
        MultiplicativeFn::new("inv_tau", |_, a| int(big(a as u64 + 1)).recip())
    }

    pub const NAMES: &[&str] = &[
        "mu", "one", "id", "inv_id", "inv_id_k", "inv_phi", "inv_tau", "tau_k", "sigma", "phi",
        "jordan_k", "psi_k",
    ];

    /// Resolves a registry name. `_k` families take their parameter either as
    /// a numeric suffix (`tau_3`) or from `k`.
    pub fn by_name(name: &str, k: Option<u32>) -> Result<RationalFn> {
        let (base, suffix) = split_suffix(name);
        let k_of = |default: Option<u32>| -> Result<u32> {
            suffix
                .or(k)
                .or(default)
                .ok_or_else(|| Error::param(format!("function {name} needs a parameter k")))
        };
        match base {
            "mu" => Ok(mobius()),
            "one" => Ok(one()),
            "id" => Ok(id()),
            "inv_id" if suffix.is_none() && k.is_none() => Ok(inv_id_k(1).renamed("inv_id")),
            "inv_id" | "inv_id_k" => {
                let k = k_of(None)?;
                if k == 0 {
                    return Err(Error::param("inv_id_k needs k >= 1"));
                }
                Ok(inv_id_k(k))
            }
            "inv_phi" => Ok(inv_phi()),
            "inv_tau" => Ok(inv_tau()),
            "tau" | "tau_k" => classical_fn(ClassicalKind::TauK, k_of(Some(2))?),
            "sigma" => classical_fn(ClassicalKind::Sigma, 1),
            "phi" => classical_fn(ClassicalKind::Phi, 1),
            "jordan" | "jordan_k" => classical_fn(ClassicalKind::Jordan, k_of(None)?),
            "psi" | "psi_k" => classical_fn(ClassicalKind::Dedekind, k_of(Some(1))?),
            _ => Err(Error::param(format!(
                "unknown function {name:?}; known: {}",
                NAMES.join(", ")
            ))),
        }
    }

    fn split_suffix(name: &str) -> (&str, Option<u32>) {
        if let Some((base, tail)) = name.rsplit_once('_') {
            if let Ok(k) = tail.parse::<u32>() {
                return (base, Some(k));
            }
        }
        (name, None)
    }
}
