//! Working-precision arithmetic.
//!
//! Everything numeric that has to run at a configurable number of decimal
//! digits is written against [`Scalar`], which is implemented for `f64` and for
//! the MPFR-backed [`Real`]. Exact integers and rationals come straight from
//! `rug`.

mod complex;
mod precision;
mod real;

pub use complex::Cplx;
pub use precision::{PrecisionConfig, DIGITS_ENV};
pub use real::Real;

use std::fmt::Debug;

use rug::{Integer, Rational};
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

/// A real field element carrying its own precision.
///
/// Constants are produced with [`Scalar::lift`], which creates a value at the
/// same precision as `self`; there is no precision-free `zero()`.
pub trait Scalar:
    Clone
    + PartialOrd
    + Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + for<'a> DivAssign<&'a Self>
{
    fn lift(&self, v: f64) -> Self;
    fn lift_int(&self, v: i64) -> Self;
    fn lift_integer(&self, v: &Integer) -> Self;
    fn lift_rational(&self, v: &Rational) -> Self;
    fn sqrt(&self) -> Self;
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn abs(&self) -> Self;
    fn hypot(&self, other: &Self) -> Self;
    /// `ln Γ(x)` for `x > 0`.
    fn ln_gamma(&self) -> Self;
    fn pi(&self) -> Self;
    /// Unit roundoff at this value's precision.
    fn epsilon(&self) -> Self;
    fn to_f64(&self) -> f64;
    fn is_finite(&self) -> bool;

    fn zero_like(&self) -> Self {
        self.lift(0.0)
    }
    fn one_like(&self) -> Self {
        self.lift(1.0)
    }
    fn is_zero(&self) -> bool {
        self.to_f64() == 0.0 && *self == self.zero_like()
    }
    /// `self += a·b`.
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += a.clone() * b;
    }
    /// `self −= a·b`.
    fn sub_mul(&mut self, a: &Self, b: &Self) {
        *self -= a.clone() * b;
    }
    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl Scalar for f64 {
    fn lift(&self, v: f64) -> Self {
        v
    }
    fn lift_int(&self, v: i64) -> Self {
        v as f64
    }
    fn lift_integer(&self, v: &Integer) -> Self {
        v.to_f64()
    }
    fn lift_rational(&self, v: &Rational) -> Self {
        v.to_f64()
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn ln(&self) -> Self {
        f64::ln(*self)
    }
    fn sin(&self) -> Self {
        f64::sin(*self)
    }
    fn cos(&self) -> Self {
        f64::cos(*self)
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn hypot(&self, other: &Self) -> Self {
        f64::hypot(*self, *other)
    }
    fn ln_gamma(&self) -> Self {
        crate::special::ln_gamma_real(*self)
    }
    fn pi(&self) -> Self {
        std::f64::consts::PI
    }
    fn epsilon(&self) -> Self {
        f64::EPSILON / 2.0
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
}
