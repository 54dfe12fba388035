use num_complex::Complex64;

use super::gamma::ln_gamma_real;

/// `K_ν(x)` for half-integer `ν`, `x > 0`, by upward recurrence from
/// `K_{±1/2}(x) = √(π/(2x)) e^{−x}`.
///
/// `twice_nu` is `2ν` and must be odd.
pub fn bessel_k_half_integer(twice_nu: i32, x: f64) -> f64 {
    assert!(twice_nu % 2 != 0, "order must be half-integer");
    let order = twice_nu.unsigned_abs();
    let k_half = (std::f64::consts::PI / (2.0 * x)).sqrt() * (-x).exp();
    let mut prev = k_half;
    let mut cur = k_half;
    let mut nu = 0.5;
    let mut reached = 1;
    while reached < order {
        let next = prev + 2.0 * nu / x * cur;
        prev = cur;
        cur = next;
        nu += 1.0;
        reached += 2;
    }
    cur
}

/// `K_ν(x)` for real `ν` and `x > 0` from `∫₀^∞ e^{−x cosh t} cosh(νt) dt`.
///
/// The trapezoidal rule converges geometrically in the step for this
/// integrand; the step is halved until two passes agree.
pub fn bessel_k(nu: f64, x: f64) -> f64 {
    assert!(x > 0.0, "K_ν needs a positive argument");
    let f = |t: f64| (-x * t.cosh()).exp() * (nu * t).cosh();
    let mut h = 0.25;
    let mut last = f64::NAN;
    for _ in 0..8 {
        let mut sum = 0.5 * f(0.0);
        let mut j = 1;
        loop {
            let v = f(j as f64 * h);
            sum += v;
            if v < 1e-18 * sum || j > 200_000 {
                break;
            }
            j += 1;
        }
        let val = sum * h;
        if (val - last).abs() <= 1e-15 * val.abs() {
            return val;
        }
        last = val;
        h /= 2.0;
    }
    last
}

/// `I_ν(z) = Σ (z/2)^{2m+ν} / (m! Γ(m+ν+1))` for `ν > −1`, principal branch.
pub fn bessel_i(nu: f64, z: Complex64) -> Complex64 {
    assert!(nu > -1.0, "series form needs ν > −1");
    if z == Complex64::new(0.0, 0.0) {
        return if nu == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        };
    }
    let half = z / 2.0;
    let q = half * half;
    let mut term = (half.ln() * nu - ln_gamma_real(nu + 1.0)).exp();
    let mut sum = term;
    for m in 0..10_000 {
        let mf = f64::from(m);
        term *= q / ((mf + 1.0) * (mf + nu + 1.0));
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() && mf > q.norm().sqrt() {
            break;
        }
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn half_integer_closed_forms() {
        let x = 1.7;
        let k12 = (PI / (2.0 * x)).sqrt() * (-x).exp();
        assert!((bessel_k_half_integer(1, x) - k12).abs() < 1e-16);
        assert!((bessel_k_half_integer(-1, x) - k12).abs() < 1e-16);
        // K_{3/2}(x) = K_{1/2}(x) (1 + 1/x)
        assert!((bessel_k_half_integer(3, x) / (k12 * (1.0 + 1.0 / x)) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn integral_form_matches_closed_form() {
        for x in [0.05, 0.5, 2.0, 9.0] {
            for tn in [1, 3, 5] {
                let a = bessel_k(f64::from(tn) / 2.0, x);
                let b = bessel_k_half_integer(tn, x);
                assert!((a / b - 1.0).abs() < 1e-13, "x = {x}, 2ν = {tn}");
            }
        }
    }

    #[test]
    fn modified_i_half_orders() {
        // I_{1/2}(x) = √(2/(πx)) sinh x, I_{−1/2}(x) = √(2/(πx)) cosh x
        let x = 2.3;
        let c = (2.0 / (PI * x)).sqrt();
        let z = Complex64::new(x, 0.0);
        assert!((bessel_i(0.5, z).re / (c * x.sinh()) - 1.0).abs() < 1e-14);
        assert!((bessel_i(-0.5, z).re / (c * x.cosh()) - 1.0).abs() < 1e-14);
    }
}
