//! Scalar abstractions shared by the exact and floating-point code paths.
//!
//! Elimination routines in [`crate::linalg`] are written once against
//! [`Scalar`] (an integral domain with exact division) or [`Field`] and are
//! instantiated with [`crate::Rational`] for the symbolic pipeline and with
//! `f64` / [`crate::Complex64`] for numerics.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::{BigRational, Ratio};
use num_traits::{Float, Num, Signed, ToPrimitive};

/// A commutative ring element usable in fraction-free elimination.
///
/// Division must be exact whenever the dividend is a multiple of the divisor,
/// which is all the Bareiss determinant needs.
pub trait Scalar: Clone + PartialEq + Debug + Num + Neg<Output = Self> {
    /// Exact types pick the first nonzero pivot; inexact types pick the
    /// largest [`Scalar::magnitude`].
    const EXACT: bool;

    fn magnitude(&self) -> f64;

    /// Zero test used for pivoting. Inexact types compare against a small
    /// absolute threshold.
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }
}

/// A [`Scalar`] whose division is the true field inverse.
pub trait Field: Scalar {}

macro_rules! impl_exact_int {
    ($($t:ty),*) => {$(
        impl Scalar for $t {
            const EXACT: bool = true;
            fn magnitude(&self) -> f64 {
                self.abs().to_f64().unwrap_or(f64::INFINITY)
            }
        }
    )*};
}

impl_exact_int!(i32, i64, i128, BigInt);

macro_rules! impl_exact_ratio {
    ($($t:ty),*) => {$(
        impl Scalar for Ratio<$t> {
            const EXACT: bool = true;
            fn magnitude(&self) -> f64 {
                self.abs().to_f64().unwrap_or(f64::INFINITY)
            }
        }
        impl Field for Ratio<$t> {}
    )*};
}

impl_exact_ratio!(i64, BigInt);

const FLOAT_PIVOT_EPS: f64 = 1e-12;

macro_rules! impl_float {
    ($($t:ty),*) => {$(
        impl Scalar for $t {
            const EXACT: bool = false;
            fn magnitude(&self) -> f64 {
                self.abs() as f64
            }
            fn is_negligible(&self) -> bool {
                (self.abs() as f64) <= FLOAT_PIVOT_EPS
            }
        }
        impl Field for $t {}
    )*};
}

impl_float!(f32, f64);

impl<T> Scalar for Complex<T>
where
    T: Float + Debug,
{
    const EXACT: bool = false;
    fn magnitude(&self) -> f64 {
        self.norm().to_f64().unwrap_or(f64::INFINITY)
    }
    fn is_negligible(&self) -> bool {
        self.magnitude() <= FLOAT_PIVOT_EPS
    }
}

impl<T> Field for Complex<T> where T: Float + Debug {}

/// Lift an integer into any rational field.
pub fn rational_from_int(v: &BigInt) -> BigRational {
    BigRational::from_integer(v.clone())
}
