//! Scalar abstractions.
//!
//! Exact accumulators are generic over [`ExactInt`] so that the same
//! evaluator runs on machine integers (fast, overflow reported as an error)
//! or on [`num_bigint::BigInt`] (never overflows). Floating-point main terms
//! are generic over [`Real`].

use std::fmt::{Debug, Display};

use num_bigint::ToBigInt;
use num_traits::{
    CheckedAdd, CheckedMul, CheckedSub, Float, FloatConst, FromPrimitive, One, Signed, ToPrimitive,
    Zero,
};

use crate::error::{Error, Result};

pub trait ExactInt:
    Clone
    + Debug
    + Display
    + Ord
    + Zero
    + One
    + Signed
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + ToBigInt
    + Send
    + Sync
    + 'static
{
}

impl<T> ExactInt for T where
    T: Clone
        + Debug
        + Display
        + Ord
        + Zero
        + One
        + Signed
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + FromPrimitive
        + ToPrimitive
        + ToBigInt
        + Send
        + Sync
        + 'static
{
}

pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Send + Sync + 'static
{
}

impl<T> Real for T where
    T: Float + FloatConst + FromPrimitive + Debug + Display + Send + Sync + 'static
{
}

pub(crate) fn from_i128<T: ExactInt>(v: i128, ctx: &'static str) -> Result<T> {
    T::from_i128(v).ok_or(Error::Overflow(ctx))
}

pub(crate) fn from_u64<T: ExactInt>(v: u64, ctx: &'static str) -> Result<T> {
    T::from_u64(v).ok_or(Error::Overflow(ctx))
}

pub(crate) fn checked_add<T: ExactInt>(a: &T, b: &T, ctx: &'static str) -> Result<T> {
    a.checked_add(b).ok_or(Error::Overflow(ctx))
}

pub(crate) fn checked_mul<T: ExactInt>(a: &T, b: &T, ctx: &'static str) -> Result<T> {
    a.checked_mul(b).ok_or(Error::Overflow(ctx))
}

pub(crate) fn real<F: Real>(v: f64) -> F {
    F::from_f64(v).expect("finite f64 converts to every Real")
}
