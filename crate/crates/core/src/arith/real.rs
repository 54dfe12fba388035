use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::float::Constant;
use rug::{Float, Integer, Rational};

use super::Scalar;

/// Arbitrary-precision binary floating point number (MPFR).
///
/// Binary operations keep the precision of the left operand.
#[derive(Clone, PartialEq)]
pub struct Real(Float);

impl Real {
    pub fn with_prec(bits: u32, v: f64) -> Self {
        Real(Float::with_val(bits, v))
    }

    pub fn from_integer(bits: u32, v: &Integer) -> Self {
        Real(Float::with_val(bits, v))
    }

    pub fn from_rational(bits: u32, v: &Rational) -> Self {
        Real(Float::with_val(bits, v))
    }

    pub fn prec(&self) -> u32 {
        self.0.prec()
    }

    pub fn inner(&self) -> &Float {
        &self.0
    }

    /// Re-rounds to a different precision.
    pub fn to_prec(&self, bits: u32) -> Self {
        Real(Float::with_val(bits, &self.0))
    }

    pub fn log10(&self) -> Self {
        Real(self.0.clone().log10())
    }

    pub fn powf(&self, e: &Real) -> Self {
        use rug::ops::Pow;
        Real(self.0.clone().pow(&e.0))
    }

    pub fn powi(&self, e: i32) -> Self {
        use rug::ops::Pow;
        Real(self.0.clone().pow(e))
    }

    /// Angle of the point `(x, self)`.
    pub fn atan2(&self, x: &Real) -> Self {
        Real(self.0.clone().atan2(&x.0))
    }

    pub fn is_sign_negative(&self) -> bool {
        self.0.is_sign_negative()
    }

    /// Decimal scientific representation with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        self.0.to_string_radix(10, Some(digits.max(1)))
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(20))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(p) => write!(f, "{}", self.to_decimal(p)),
            None => write!(f, "{}", self.to_decimal(20)),
        }
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

macro_rules! real_binop {
    ($tr:ident, $m:ident, $tra:ident, $ma:ident) => {
        impl $tr for Real {
            type Output = Real;
            fn $m(mut self, rhs: Real) -> Real {
                $tra::$ma(&mut self.0, &rhs.0);
                self
            }
        }
        impl<'a> $tr<&'a Real> for Real {
            type Output = Real;
            fn $m(mut self, rhs: &'a Real) -> Real {
                $tra::$ma(&mut self.0, &rhs.0);
                self
            }
        }
        impl<'a, 'b> $tr<&'b Real> for &'a Real {
            type Output = Real;
            fn $m(self, rhs: &'b Real) -> Real {
                let mut out = self.clone();
                $tra::$ma(&mut out.0, &rhs.0);
                out
            }
        }
        impl $tra for Real {
            fn $ma(&mut self, rhs: Real) {
                $tra::$ma(&mut self.0, &rhs.0);
            }
        }
        impl<'a> $tra<&'a Real> for Real {
            fn $ma(&mut self, rhs: &'a Real) {
                $tra::$ma(&mut self.0, &rhs.0);
            }
        }
    };
}

real_binop!(Add, add, AddAssign, add_assign);
real_binop!(Sub, sub, SubAssign, sub_assign);
real_binop!(Mul, mul, MulAssign, mul_assign);
real_binop!(Div, div, DivAssign, div_assign);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(-self.0)
    }
}

impl Scalar for Real {
    fn lift(&self, v: f64) -> Self {
        Real(Float::with_val(self.prec(), v))
    }
    fn lift_int(&self, v: i64) -> Self {
        Real(Float::with_val(self.prec(), v))
    }
    fn lift_integer(&self, v: &Integer) -> Self {
        Real(Float::with_val(self.prec(), v))
    }
    fn lift_rational(&self, v: &Rational) -> Self {
        Real(Float::with_val(self.prec(), v))
    }
    fn sqrt(&self) -> Self {
        Real(self.0.clone().sqrt())
    }
    fn exp(&self) -> Self {
        Real(self.0.clone().exp())
    }
    fn ln(&self) -> Self {
        Real(self.0.clone().ln())
    }
    fn sin(&self) -> Self {
        Real(self.0.clone().sin())
    }
    fn cos(&self) -> Self {
        Real(self.0.clone().cos())
    }
    fn abs(&self) -> Self {
        Real(self.0.clone().abs())
    }
    fn hypot(&self, other: &Self) -> Self {
        Real(self.0.clone().hypot(&other.0))
    }
    fn ln_gamma(&self) -> Self {
        Real(self.0.clone().ln_gamma())
    }
    fn pi(&self) -> Self {
        Real(Float::with_val(self.prec(), Constant::Pi))
    }
    fn epsilon(&self) -> Self {
        Real(Float::with_val(
            self.prec(),
            Float::i_exp(1, 1 - self.prec() as i32),
        ))
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }
    fn is_finite(&self) -> bool {
        self.0.is_finite()
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        self.0 += &a.0 * &b.0;
    }
    fn sub_mul(&mut self, a: &Self, b: &Self) {
        self.0 -= &a.0 * &b.0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_two_to_fifty_digits() {
        let two = Real::with_prec(200, 2.0);
        let s = two.sqrt();
        assert!(s
            .to_decimal(50)
            .starts_with("1.414213562373095048801688724209698078569671875376"));
    }

    #[test]
    fn ops_keep_left_precision() {
        let a = Real::with_prec(300, 1.0);
        let b = Real::with_prec(100, 3.0);
        let c = a / &b;
        assert_eq!(c.prec(), 300);
    }

    #[test]
    fn epsilon_scales_with_precision() {
        let a = Real::with_prec(100, 1.0);
        let e = a.epsilon().to_f64();
        assert!((e - 2f64.powi(-99)).abs() < 1e-40);
    }
}
