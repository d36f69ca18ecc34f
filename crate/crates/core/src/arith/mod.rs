//! Sieve construction, factorization and classical multiplicative functions.

mod factor;
mod functions;
mod sieve;
mod summatory;

pub(crate) use factor::trial_prime_divisors;
pub use factor::Factorization;
pub use functions::{classical_fn, named, ClassicalKind, MultiplicativeFn};
pub use sieve::{build_sieve, SieveOptions, SieveTable, DEFAULT_SIEVE_CAP};
pub use summatory::{pow_omega_sum, pow_omega_sum_big, smooth_support_count};
