//! Normalized Hermite and Meixner–Pollaczek polynomials at complex points.
//!
//! Both families are evaluated by forward three-term recurrence. At the purely
//! imaginary points used by the deficiency analysis the wanted solution is the
//! growing one, so forward iteration is stable there.

use serde::{Deserialize, Serialize};

use crate::arith::{Cplx, Scalar};
use crate::error::{invalid, Result};

/// Polynomial family and, for Meixner–Pollaczek, its parameter `λ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum PolynomialFamily<T> {
    /// `h_p = i^p H_p / √(2^p p!)`.
    HermiteNormalized,
    /// `P^(λ)_n(x; π/2)`.
    MeixnerPollaczekRaw { lambda: T },
    /// Orthonormal `p^(λ)_n` with `p_0 = √(2^{2λ} / (2π Γ(2λ)))`.
    MeixnerPollaczekNormalized { lambda: T },
}

impl<T: Scalar> PolynomialFamily<T> {
    /// Values at degrees `0..=n_max`.
    pub fn values(&self, n_max: usize, x: &Cplx<T>) -> Result<Vec<Cplx<T>>> {
        match self {
            Self::HermiteNormalized => Ok(hermite_normalized_seq(n_max, x)),
            Self::MeixnerPollaczekRaw { lambda } => meixner_pollaczek_seq(lambda, n_max, x, false),
            Self::MeixnerPollaczekNormalized { lambda } => {
                meixner_pollaczek_seq(lambda, n_max, x, true)
            }
        }
    }
}

/// `h_0(x), …, h_{p_max}(x)` from
/// `√(p+1) h_{p+1} = √p h_{p−1} + i√2 x h_p`, `h_{−1} = 0`, `h_0 = 1`.
pub fn hermite_normalized_seq<T: Scalar>(p_max: usize, x: &Cplx<T>) -> Vec<Cplx<T>> {
    let like = &x.re;
    let ix_sqrt2 = x.mul_i().scale(&like.lift(2.0).sqrt());
    let mut out = Vec::with_capacity(p_max + 1);
    out.push(Cplx::real(like.one_like()));
    let mut prev = Cplx::zero_like(like);
    for p in 0..p_max {
        let cur = out[p].clone();
        let sp = like.lift_int(p as i64).sqrt();
        let next = (ix_sqrt2.clone() * &cur + prev.scale(&sp))
            .div_real(&like.lift_int(p as i64 + 1).sqrt());
        prev = cur;
        out.push(next);
    }
    out
}

pub fn hermite_normalized<T: Scalar>(p: usize, x: &Cplx<T>) -> Cplx<T> {
    hermite_normalized_seq(p, x)
        .pop()
        .expect("sequence has p + 1 entries")
}

/// `π_0(x), …, π_{n_max}(x)` for the Meixner–Pollaczek family at `φ = π/2`.
///
/// Raw: `(n+1)P_{n+1} = 2x P_n − (n+2λ−1) P_{n−1}`.
/// Normalized: `√((n+1)(n+2λ)) p_{n+1} = 2x p_n − √(n(n+2λ−1)) p_{n−1}`.
pub fn meixner_pollaczek_seq<T: Scalar>(
    lambda: &T,
    n_max: usize,
    x: &Cplx<T>,
    normalized: bool,
) -> Result<Vec<Cplx<T>>> {
    if !(*lambda > lambda.zero_like()) {
        return Err(invalid("Meixner–Pollaczek parameter λ must be positive"));
    }
    let like = &x.re;
    let two_lambda = lambda.clone() * &like.lift(2.0);
    let start = if normalized {
        mp_normalization(lambda)
    } else {
        like.one_like()
    };
    let two_x = x.scale(&like.lift(2.0));
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(Cplx::real(start));
    let mut prev = Cplx::zero_like(like);
    for n in 0..n_max {
        let nf = like.lift_int(n as i64);
        let cur = out[n].clone();
        let (lead, back) = if normalized {
            (
                ((nf.clone() + &like.one_like()) * (nf.clone() + &two_lambda)).sqrt(),
                (nf.clone() * (nf.clone() + &two_lambda - &like.one_like())).sqrt(),
            )
        } else {
            (
                nf.clone() + &like.one_like(),
                nf.clone() + &two_lambda - &like.one_like(),
            )
        };
        let next = (two_x.clone() * &cur - prev.scale(&back)).div_real(&lead);
        prev = cur;
        out.push(next);
    }
    Ok(out)
}

pub fn meixner_pollaczek<T: Scalar>(
    lambda: &T,
    n: usize,
    x: &Cplx<T>,
    normalized: bool,
) -> Result<Cplx<T>> {
    Ok(meixner_pollaczek_seq(lambda, n, x, normalized)?
        .pop()
        .expect("sequence has n + 1 entries"))
}

/// `p^(λ)_0 = √(2^{2λ} / (2π Γ(2λ)))`.
pub fn mp_normalization<T: Scalar>(lambda: &T) -> T {
    let two = lambda.lift(2.0);
    let two_lambda = lambda.clone() * &two;
    let ln =
        two_lambda.clone() * &two.ln() - (two.clone() * &lambda.pi()).ln() - two_lambda.ln_gamma();
    (ln / &two).exp()
}

/// Running sums `Σ_{p ≤ P} |π_p(z)|²` for `P = 0..=p_max`.
pub fn determinacy_partial_sum<T: Scalar>(
    family: &PolynomialFamily<T>,
    z: &Cplx<T>,
    p_max: usize,
) -> Result<Vec<T>> {
    if z.im.is_zero() {
        return Err(invalid("determinacy sums need a point off the real axis"));
    }
    let vals = family.values(p_max, z)?;
    let mut acc = z.re.zero_like();
    Ok(vals
        .iter()
        .map(|v| {
            acc += v.norm_sqr();
            acc.clone()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Real;

    fn c(re: f64, im: f64) -> Cplx<f64> {
        Cplx::new(re, im)
    }

    #[test]
    fn hermite_at_i_over_sqrt2() {
        let x = c(0.0, 0.5f64.sqrt());
        let h = hermite_normalized_seq(2, &x);
        assert!((h[0].re - 1.0).abs() < 1e-15);
        assert!((h[1].re + 1.0).abs() < 1e-15 && h[1].im.abs() < 1e-15);
        assert!((h[2].re - 2f64.sqrt()).abs() < 1e-15 && h[2].im.abs() < 1e-15);
    }

    #[test]
    fn hermite_matches_closed_form_h2() {
        // h_2 = i² H_2 / √8 with H_2 = 4x² − 2
        let x = c(0.3, -0.7);
        let x2 = x.clone() * &x;
        let closed = (x2.scale(&4.0) - c(2.0, 0.0)).scale(&(-1.0 / 8f64.sqrt()));
        let h2 = hermite_normalized(2, &x);
        assert!((h2 - &closed).abs() < 1e-14);
    }

    #[test]
    fn raw_meixner_pollaczek_first_degree() {
        let p = meixner_pollaczek(&0.25, 1, &c(0.0, 0.25), false).unwrap();
        assert!(p.re.abs() < 1e-16 && (p.im - 0.5).abs() < 1e-16);
        assert!(meixner_pollaczek(&0.0, 1, &c(0.0, 0.25), false).is_err());
    }

    #[test]
    fn normalized_ratio_at_degree_one() {
        let x = c(0.4, 0.1);
        for lambda in [0.25, 0.75, 1.3] {
            let v = meixner_pollaczek_seq(&lambda, 1, &x, true).unwrap();
            let ratio = v[1].div(&v[0]);
            let want = x.scale(&(2.0 / (2.0 * lambda).sqrt()));
            assert!((ratio - &want).abs() < 1e-14);
        }
    }

    #[test]
    fn normalization_constants() {
        // λ = 1/4: √(√2 / (2π √π))
        let l = Real::with_prec(200, 0.25);
        let got = mp_normalization(&l).to_f64();
        let want =
            (2f64.sqrt() / (2.0 * std::f64::consts::PI * std::f64::consts::PI.sqrt())).sqrt();
        assert!((got - want).abs() < 1e-15);
    }

    #[test]
    fn determinacy_sums_grow() {
        let z = c(0.0, 0.5f64.sqrt());
        let s = determinacy_partial_sum(&PolynomialFamily::HermiteNormalized, &z, 200).unwrap();
        assert_eq!(s[0], 1.0);
        assert!(s[200] > s[100]);
        assert!(
            determinacy_partial_sum(&PolynomialFamily::HermiteNormalized, &c(1.0, 0.0), 5).is_err()
        );
    }
}
