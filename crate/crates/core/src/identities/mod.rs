//! Left and right sides of every identity, evaluated exactly.

mod additive;
mod grid;
mod lemmas;
mod log_sums;
mod report;

pub use additive::{th2_lhs, th2_rhs};
pub use grid::{
    classic_mertens_floor, classic_mertens_floor_range, combinatoric_rhs, grid_sum, ordered_lhs,
    th15_lhs, th15_rhs, th1_lhs, th1_rhs,
};
pub use lemmas::{le10, le2, le5, le6, le7, le8, le9, LemmaId};
pub use log_sums::{cor9_function, cor9_rhs, th3_lhs, th3_rhs, MobiusPower};
pub use report::{verify_identity, verify_lemma, IdentityId, IdentityReport, Params, Value};

use crate::error::{Error, Result};
use crate::RationalFn;

/// Weight attached to a tuple `(n_1, …, n_r)` in a grid sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeightKind {
    /// `μ(n_1⋯n_r)`
    MobiusProduct,
    /// `μ(n_1⋯n_r)²`
    MobiusSquareProduct,
    /// `f(n_1) + ⋯ + f(n_r)`
    AdditiveF,
}

/// Parameters of a grid sum `Σ_{n_i ≤ x} w(n_1, …, n_r)⌊x/(n_1⋯n_r)⌋`.
#[derive(Debug, Clone)]
pub struct GridSumSpec {
    r: u32,
    x: u64,
    weight: WeightKind,
    f: Option<RationalFn>,
}

impl GridSumSpec {
    pub fn new(r: u32, x: u64, weight: WeightKind, f: Option<RationalFn>) -> Result<Self> {
        if r < 2 {
            return Err(Error::param(format!("r must be at least 2 (got {r})")));
        }
        if x == 0 {
            return Err(Error::param("x must be at least 1"));
        }
        if weight == WeightKind::AdditiveF && f.is_none() {
            return Err(Error::param("additive weight needs f"));
        }
        Ok(Self { r, x, weight, f })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn x(&self) -> u64 {
        self.x
    }

    pub fn weight(&self) -> WeightKind {
        self.weight
    }

    pub fn f(&self) -> Option<&RationalFn> {
        self.f.as_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{build_sieve, named};

    #[test]
    fn spec_invariants() {
        assert!(GridSumSpec::new(1, 10, WeightKind::MobiusProduct, None).is_err());
        assert!(GridSumSpec::new(2, 0, WeightKind::MobiusProduct, None).is_err());
        assert!(GridSumSpec::new(2, 10, WeightKind::AdditiveF, None).is_err());
        let s = build_sieve(100).unwrap();
        let spec = GridSumSpec::new(3, 100, WeightKind::AdditiveF, Some(named::mobius())).unwrap();
        assert_eq!(grid_sum::<i64>(&spec, &s).unwrap(), 1446);
        let spec = GridSumSpec::new(2, 3, WeightKind::MobiusSquareProduct, None).unwrap();
        assert_eq!(grid_sum::<i64>(&spec, &s).unwrap(), 7);
    }
}
