use crate::arith::{Cplx, Scalar};
use crate::error::{Error, Result};

/// Value of `₁F₁(a; b; z)` with the digits lost to cancellation.
#[derive(Debug, Clone)]
pub struct Hyp1f1<T> {
    pub value: Cplx<T>,
    pub terms: usize,
    /// `log10(max |term| / |sum|)`, zero when nothing cancels.
    pub digits_lost: f64,
}

const MAX_TERMS: usize = 20_000;

/// Kummer's series `Σ (a)_n / (b)_n · z^n / n!`, summed with the term ratio.
///
/// Summation stops once a term falls below the working epsilon relative to
/// the partial sum and the terms are already decreasing.
pub fn hyp1f1<T: Scalar>(a: &Cplx<T>, b: &Cplx<T>, z: &Cplx<T>) -> Result<Hyp1f1<T>> {
    let like = &z.re;
    let eps = like.epsilon();
    let one = Cplx::real(like.one_like());
    let mut term = one.clone();
    let mut sum = one;
    let mut biggest = like.one_like();
    let mut prev_abs = like.one_like();
    for n in 0..MAX_TERMS {
        let nf = like.lift_int(n as i64);
        let num = (a.clone() + &Cplx::real(nf.clone())) * z;
        let den = (b.clone() + &Cplx::real(nf.clone())).scale(&(nf + &like.one_like()));
        if den.re.is_zero() && den.im.is_zero() {
            return Err(Error::InvalidArgument(
                "₁F₁ lower parameter is a non-positive integer".into(),
            ));
        }
        term = term * num.div(&den);
        sum += &term;
        let ta = term.abs();
        if ta > biggest {
            biggest = ta.clone();
        }
        let sa = sum.abs();
        if ta <= eps.clone() * &sa && ta <= prev_abs {
            let lost = if sa.is_zero() {
                f64::INFINITY
            } else {
                (biggest / &sa).to_f64().log10().max(0.0)
            };
            return Ok(Hyp1f1 {
                value: sum,
                terms: n + 1,
                digits_lost: lost,
            });
        }
        prev_abs = ta;
    }
    Err(Error::Numerical(format!(
        "₁F₁ series did not settle within {MAX_TERMS} terms"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_to_exponential() {
        // ₁F₁(a; a; z) = e^z
        let a = Cplx::new(0.7, 0.3);
        let z = Cplx::new(-1.2, 0.8);
        let r = hyp1f1(&a, &a, &z).unwrap();
        let want = Cplx::new(z.re.exp() * z.im.cos(), z.re.exp() * z.im.sin());
        assert!((r.value - &want).abs() < 1e-14);
    }

    #[test]
    fn kummer_transformation() {
        let a = Cplx::new(0.25, 3.0);
        let b = Cplx::new(0.5, 0.0);
        let z = Cplx::new(-2.0, -1.0);
        let lhs = hyp1f1(&a, &b, &z).unwrap().value;
        let bma = b.clone() - &a;
        let rhs = hyp1f1(&bma, &b, &-z.clone()).unwrap().value;
        let ez = Cplx::new(z.re.exp() * z.im.cos(), z.re.exp() * z.im.sin());
        assert!((lhs - &(ez * rhs)).abs() < 1e-12);
    }

    #[test]
    fn value_at_zero_is_one() {
        let r = hyp1f1(
            &Cplx::new(2.0, 1.0),
            &Cplx::new(0.5, 0.0),
            &Cplx::new(0.0, 0.0),
        )
        .unwrap();
        assert_eq!(r.value, Cplx::new(1.0, 0.0));
    }
}
