//! Exact evaluation of multidimensional Möbius grid sums and the near-linear
//! sieve sums they reduce to.
//!
//! The left-hand sides are sums over tuples `(n_1, …, n_r) ∈ [1, x]^r`
//! weighted by `μ(n_1⋯n_r)⌊x/(n_1⋯n_r)⌋` and its relatives; the right-hand
//! sides are single sums such as `Σ_{n ≤ x} (1 − r)^{ω(n)}`. Both are
//! computed exactly so every identity can be checked by integer (or formal
//! log-combination) equality.
//!
//! Exact integer evaluators are generic over [`scalar::ExactInt`] and
//! floating-point main terms over [`scalar::Real`]; the aliases below fix the
//! default choices.

pub mod algebra;
pub mod arith;
pub mod asymptotics;
pub mod error;
pub mod identities;
pub mod oracle;
pub mod scalar;

pub use error::{Error, Result};

/// Arbitrary-precision integer used by reports and the default evaluators.
pub type Int = num_bigint::BigInt;
/// Exact normalized rational number.
pub type Rational = num_rational::BigRational;
/// Formal combination `Σ c_p log p` with exact rational coefficients.
pub type LogCombo = algebra::PrimeLogCombo<Rational>;
/// Multiplicative function with exact rational values.
pub type RationalFn = arith::MultiplicativeFn<Rational>;
