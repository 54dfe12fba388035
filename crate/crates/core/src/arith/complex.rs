use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use super::Scalar;

/// Complex number over a working-precision [`Scalar`].
#[derive(Clone, Debug, PartialEq)]
pub struct Cplx<T> {
    pub re: T,
    pub im: T,
}

impl<T: Scalar> Cplx<T> {
    pub fn new(re: T, im: T) -> Self {
        Self { re, im }
    }

    pub fn real(re: T) -> Self {
        let im = re.zero_like();
        Self { re, im }
    }

    pub fn zero_like(x: &T) -> Self {
        Self::new(x.zero_like(), x.zero_like())
    }

    pub fn i_like(x: &T) -> Self {
        Self::new(x.zero_like(), x.one_like())
    }

    /// `e^{i phi}`.
    pub fn cis(phi: &T) -> Self {
        Self::new(phi.cos(), phi.sin())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> T {
        self.re.clone() * &self.re + self.im.clone() * &self.im
    }

    pub fn abs(&self) -> T {
        self.re.hypot(&self.im)
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.re.clone() * s, self.im.clone() * s)
    }

    pub fn div_real(&self, s: &T) -> Self {
        Self::new(self.re.clone() / s, self.im.clone() / s)
    }

    /// Multiplication by `i`.
    pub fn mul_i(&self) -> Self {
        Self::new(-self.im.clone(), self.re.clone())
    }

    pub fn inv(&self) -> Self {
        let n = self.norm_sqr();
        Self::new(self.re.clone() / &n, -self.im.clone() / &n)
    }

    pub fn div(&self, other: &Self) -> Self {
        self.clone() * other.inv()
    }

    /// `i^m` at the precision of `like`.
    pub fn i_pow(m: i64, like: &T) -> Self {
        match m.rem_euclid(4) {
            0 => Self::new(like.one_like(), like.zero_like()),
            1 => Self::new(like.zero_like(), like.one_like()),
            2 => Self::new(-like.one_like(), like.zero_like()),
            _ => Self::new(like.zero_like(), -like.one_like()),
        }
    }

    pub fn to_c64(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    /// `self += a * b` without temporaries beyond the product.
    pub fn fma_assign(&mut self, a: &Self, b: &Self) {
        self.re.add_mul(&a.re, &b.re);
        self.re.sub_mul(&a.im, &b.im);
        self.im.add_mul(&a.re, &b.im);
        self.im.add_mul(&a.im, &b.re);
    }
}

impl<T: Scalar> Add for Cplx<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl<'a, T: Scalar> Add<&'a Cplx<T>> for Cplx<T> {
    type Output = Self;
    fn add(self, rhs: &'a Self) -> Self {
        Self::new(self.re + &rhs.re, self.im + &rhs.im)
    }
}

impl<T: Scalar> Sub for Cplx<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl<'a, T: Scalar> Sub<&'a Cplx<T>> for Cplx<T> {
    type Output = Self;
    fn sub(self, rhs: &'a Self) -> Self {
        Self::new(self.re - &rhs.re, self.im - &rhs.im)
    }
}

impl<T: Scalar> AddAssign<&Cplx<T>> for Cplx<T> {
    fn add_assign(&mut self, rhs: &Self) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl<T: Scalar> SubAssign<&Cplx<T>> for Cplx<T> {
    fn sub_assign(&mut self, rhs: &Self) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl<T: Scalar> Mul for Cplx<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let re = self.re.clone() * &rhs.re - self.im.clone() * &rhs.im;
        let im = self.re * &rhs.im + self.im * &rhs.re;
        Self::new(re, im)
    }
}

impl<'a, T: Scalar> Mul<&'a Cplx<T>> for Cplx<T> {
    type Output = Self;
    fn mul(self, rhs: &'a Self) -> Self {
        let re = self.re.clone() * &rhs.re - self.im.clone() * &rhs.im;
        let im = self.re * &rhs.im + self.im * &rhs.re;
        Self::new(re, im)
    }
}

impl<T: Scalar> Neg for Cplx<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Real;

    #[test]
    fn i_powers_cycle() {
        let one = 1.0f64;
        assert_eq!(Cplx::i_pow(0, &one), Cplx::new(1.0, 0.0));
        assert_eq!(Cplx::i_pow(5, &one), Cplx::new(0.0, 1.0));
        assert_eq!(Cplx::i_pow(-1, &one), Cplx::new(0.0, -1.0));
    }

    #[test]
    fn multiplication_and_inverse() {
        let a = Cplx::new(Real::with_prec(128, 1.0), Real::with_prec(128, 2.0));
        let b = a.inv();
        let p = a * b;
        assert!((p.re.to_f64() - 1.0).abs() < 1e-30);
        assert!(p.im.to_f64().abs() < 1e-30);
    }
}
