use num_complex::Complex64;
use std::f64::consts::PI;

// Lanczos coefficients for g = 7, n = 9
const G: f64 = 7.0;
const COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Principal branch of `ln Γ(z)`.
///
/// Lanczos approximation on `Re z ≥ 1/2`; the strip `0 < Re z < 1/2` is
/// shifted up with `ln Γ(z) = ln Γ(z+1) − ln z`, and `Re z ≤ 0` goes through
/// the reflection formula.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re <= 0.0 {
        // Γ(z)Γ(1−z) = π / sin(πz)
        let s = (z * PI).sin();
        return Complex64::new(PI.ln(), 0.0) - s.ln() - ln_gamma(Complex64::new(1.0, 0.0) - z);
    }
    if z.re < 0.5 {
        return ln_gamma(z + 1.0) - z.ln();
    }
    let z = z - 1.0;
    let mut x = Complex64::new(COEFFS[0], 0.0);
    for (j, c) in COEFFS.iter().enumerate().skip(1) {
        x += *c / (z + j as f64);
    }
    let t = z + G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

pub fn ln_gamma_real(x: f64) -> f64 {
    ln_gamma(Complex64::new(x, 0.0)).re
}

/// `|Γ(a + i b)|`.
pub fn abs_gamma(a: f64, b: f64) -> f64 {
    ln_gamma(Complex64::new(a, b)).re.exp()
}
