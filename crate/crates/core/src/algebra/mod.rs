//! Exact rational arithmetic and formal ℚ-linear combinations of prime logarithms.

mod combo;
mod rational;

pub use combo::{combo_to_float, log_of_integer, PrimeLogCombo};
pub use rational::{format_rational, invert, parse_rational, rational, rational_pow, to_integer};
