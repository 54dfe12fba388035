//! Segal–Bargmann-type model for the squeeze blocks `A^(2,i)`.
//!
//! Meixner–Pollaczek functions on `ℝ` are carried to monomials `Φ_{λ,n}` in a
//! space of entire functions with radial weight `ν(|z|)` built from `K_{2λ−1}`.
//! Every identity is checked by quadrature in `f64`: Gauss–Laguerre in the
//! radial variable, trapezoid in the angle and composite Gauss–Legendre on a
//! cut-off real line.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::Cplx;
use crate::error::{invalid, Error, Result};
use crate::orthopoly::meixner_pollaczek_seq;
use crate::quadrature::{composite_legendre, gauss_laguerre, trapezoid_circle, Rule};
use crate::special::{abs_gamma, bessel_i, bessel_k, bessel_k_half_integer, hyp1f1, ln_gamma_real};

/// The two parameters attached to the squeeze blocks.
pub const SUPPORTED_LAMBDAS: [f64; 2] = [0.25, 0.75];

pub const ORTHONORMALITY_TOLERANCE: f64 = 1e-8;
pub const PRUDNIKOV_TOLERANCE: f64 = 1e-10;
pub const TRANSFORM_TOLERANCE: f64 = 1e-6;
pub const ALGEBRAIC_TOLERANCE: f64 = 1e-12;
/// Closest approach to the pole of `(1 − z²)/(2z)`.
pub const POLE_GUARD: f64 = 1e-3;

const MAX_RADIAL_NODES: usize = 512;

/// `λ > 0`; only `1/4` and `3/4` unless `generic` is set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParameter {
    pub lambda: f64,
}

impl ModelParameter {
    pub fn new(lambda: f64, generic: bool) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(invalid(format!("λ must be positive, got {lambda}")));
        }
        if !generic && !SUPPORTED_LAMBDAS.contains(&lambda) {
            return Err(invalid(format!(
                "λ = {lambda} is outside {{1/4, 3/4}}; enable generic mode"
            )));
        }
        Ok(Self { lambda })
    }

    /// Block `A^(2,i)` the parameter belongs to.
    pub fn block(&self) -> Option<u32> {
        match self.lambda {
            l if l == 0.25 => Some(0),
            l if l == 0.75 => Some(1),
            _ => None,
        }
    }

    fn bessel_order(&self) -> f64 {
        2.0 * self.lambda - 1.0
    }

    /// `K_{2λ−1}(s) e^s s^{|2λ−1|}`, smooth and bounded on `(0, ∞)`.
    fn k_regular(&self, s: f64) -> f64 {
        let mu = self.bessel_order();
        let twice = 2.0 * mu;
        let k = if twice.fract() == 0.0 && (twice as i64) % 2 != 0 {
            bessel_k_half_integer(twice as i32, s)
        } else {
            bessel_k(mu, s)
        };
        k * s.exp() * s.powf(mu.abs())
    }
}

/// `[2^λ / (π Γ(2λ))]²`.
fn weight_constant(lambda: f64) -> f64 {
    let ln = lambda * 2f64.ln() - PI.ln() - ln_gamma_real(2.0 * lambda);
    (2.0 * ln).exp()
}

/// `ν(r) = [2^λ/(πΓ(2λ))]² r^{2λ−1} K_{2λ−1}(2r)`.
pub fn weight_nu(param: ModelParameter, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(invalid(format!("ν needs r > 0, got {r}")));
    }
    let l = param.lambda;
    let s = 2.0 * r;
    let k = param.k_regular(s) * (-s).exp() / s.powf(param.bessel_order().abs());
    Ok(weight_constant(l) * r.powf(2.0 * l - 1.0) * k)
}

/// `2^{−λ} √(2π) Γ(2λ) / √(n! Γ(n+2λ))`, the coefficient of `(−iz)^n` in `Φ_{λ,n}`.
pub fn phi_coefficient(lambda: f64, n: usize) -> f64 {
    let nf = n as f64;
    let ln = -lambda * 2f64.ln() + 0.5 * (2.0 * PI).ln() + ln_gamma_real(2.0 * lambda)
        - 0.5 * (ln_gamma_real(nf + 1.0) + ln_gamma_real(nf + 2.0 * lambda));
    ln.exp()
}

/// `Φ_{λ,n}(z) = 2^{−λ} √(2π) Γ(2λ) (−iz)^n / √(n! Γ(n+2λ))`.
pub fn basis_phi(lambda: f64, n: usize, z: C64) -> C64 {
    phi_coefficient(lambda, n) * (C64::new(0.0, -1.0) * z).powu(n as u32)
}

/// `K^(λ)(t, τ)` from `(2π/2^{2λ}) Γ²(2λ) Σ_m w^m / (m! Γ(m+2λ))`, `w = t τ̄`.
pub fn kernel_k(lambda: f64, t: C64, tau: C64) -> C64 {
    let w = t * tau.conj();
    let pre =
        (2.0 * PI * (2.0 * ln_gamma_real(2.0 * lambda) - 2.0 * lambda * 2f64.ln()).exp()).ln();
    let mut term = C64::new((pre - ln_gamma_real(2.0 * lambda)).exp(), 0.0);
    let mut sum = term;
    for m in 0..100_000 {
        let mf = m as f64;
        term *= w / ((mf + 1.0) * (mf + 2.0 * lambda));
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() && mf > w.norm() {
            break;
        }
    }
    sum
}

/// `(2π/2^{2λ}) Γ²(2λ) r^{1−2λ} I_{2λ−1}(2r)` at `r = |z|`, the Bessel form of `K^(λ)(z, z)`.
pub fn kernel_diagonal_bessel(lambda: f64, z: C64) -> C64 {
    let r = z.norm();
    let pre = 2.0 * PI * (2.0 * ln_gamma_real(2.0 * lambda) - 2.0 * lambda * 2f64.ln()).exp();
    pre * r.powf(1.0 - 2.0 * lambda) * bessel_i(2.0 * lambda - 1.0, C64::new(2.0 * r, 0.0))
}

/// `𝔭^(λ)_0(x), …, 𝔭^(λ)_{n_max}(x)` with `𝔭_n = |Γ(λ+ix)| p_n`.
pub fn mp_functions(lambda: f64, n_max: usize, x: f64) -> Result<Vec<f64>> {
    let g = abs_gamma(lambda, x);
    let p = meixner_pollaczek_seq(&lambda, n_max, &Cplx::new(x, 0.0), true)?;
    Ok(p.iter().map(|v| g * v.re).collect())
}

pub fn mp_function(lambda: f64, n: usize, x: f64) -> Result<f64> {
    Ok(*mp_functions(lambda, n, x)?.last().expect("n + 1 values"))
}

/// `G_λ(x̄, z) = e^z |Γ(λ+ix)| ₁F₁(λ+ix; 2λ; −2z)` with the digits lost in the series.
pub fn transform_kernel_g(lambda: f64, x: f64, z: C64) -> Result<(C64, f64)> {
    let a = Cplx::new(lambda, x);
    let b = Cplx::new(2.0 * lambda, 0.0);
    let w = Cplx::new(-2.0 * z.re, -2.0 * z.im);
    let f = hyp1f1(&a, &b, &w)?;
    let v = z.exp() * abs_gamma(lambda, x) * C64::new(f.value.re, f.value.im);
    Ok((v, f.digits_lost))
}

/// Outcome of one identity, both sides as `[re, im]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub lambda: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<[f64; 2]>,
    pub lhs: [f64; 2],
    pub rhs: [f64; 2],
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Quadrature nodes behind the value.
    pub nodes: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tail_estimate: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub digits_lost: Option<f64>,
}

impl IdentityCheck {
    fn new(name: &str, lambda: f64, lhs: C64, rhs: C64, tolerance: f64, nodes: usize) -> Self {
        let residual = (lhs - rhs).norm();
        Self {
            name: name.to_string(),
            lambda,
            n: None,
            m: None,
            z: None,
            lhs: [lhs.re, lhs.im],
            rhs: [rhs.re, rhs.im],
            residual,
            tolerance,
            passed: residual <= tolerance,
            nodes,
            tail_estimate: None,
            digits_lost: None,
        }
    }

    fn with_n(mut self, n: usize) -> Self {
        self.n = Some(n);
        self
    }

    fn with_m(mut self, m: usize) -> Self {
        self.m = Some(m);
        self
    }

    fn with_z(mut self, z: C64) -> Self {
        self.z = Some([z.re, z.im]);
        self
    }
}

/// Quadrature configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SbContext {
    pub param: ModelParameter,
    /// Starting Gauss–Laguerre size; doubled until two passes agree.
    pub radial_nodes: usize,
    pub angular_nodes: usize,
    /// Real-line cutoff `X`.
    pub cutoff: f64,
    pub panels: usize,
    pub panel_nodes: usize,
}

impl SbContext {
    pub fn new(param: ModelParameter) -> Self {
        Self {
            param,
            radial_nodes: 32,
            angular_nodes: 64,
            cutoff: 40.0,
            panels: 160,
            panel_nodes: 12,
        }
    }

    pub fn lambda(&self) -> f64 {
        self.param.lambda
    }

    /// Rule with `Σ w_j g(r_j) ≈ ∫₀^∞ r^d g(r) ν(r) r dr`.
    ///
    /// With `s = 2r` the integrand is `s^α e^{−s}` times a smooth factor,
    /// `α = d + 2λ − |2λ−1|`, so the Laguerre weight absorbs the behaviour
    /// at both ends.
    pub fn radial_rule(&self, d: i32, nodes: usize) -> Result<Rule> {
        let l = self.lambda();
        let mu = self.param.bessel_order();
        let alpha = f64::from(d) + 2.0 * l - mu.abs();
        if !(alpha > -1.0) {
            return Err(invalid(format!(
                "radial moment of order {d} diverges at λ = {l}"
            )));
        }
        let base = gauss_laguerre(nodes, alpha)?;
        let c = weight_constant(l) * 2f64.powf(-f64::from(d) - 2.0 * l) / 2.0;
        let weights = base
            .nodes
            .iter()
            .zip(&base.weights)
            .map(|(s, w)| w * c * self.param.k_regular(*s))
            .collect();
        Ok(Rule {
            nodes: base.nodes.iter().map(|s| s / 2.0).collect(),
            weights,
        })
    }

    /// `∫₀^∞ r^{d+1} g(r) ν(r) dr` with node doubling until two passes agree to `tol`.
    pub fn radial_integral<F>(&self, d: i32, tol: f64, g: F) -> Result<(C64, usize)>
    where
        F: Fn(f64) -> C64,
    {
        let mut n = self.radial_nodes;
        let eval = |n: usize| -> Result<C64> {
            let r = self.radial_rule(d, n)?;
            Ok(r.nodes
                .iter()
                .zip(&r.weights)
                .map(|(x, w)| *w * g(*x))
                .sum())
        };
        let mut last = eval(n)?;
        while n < MAX_RADIAL_NODES {
            n *= 2;
            let cur = eval(n)?;
            if (cur - last).norm() <= tol * cur.norm().max(1.0) {
                return Ok((cur, n));
            }
            last = cur;
        }
        Err(Error::Numerical(format!(
            "radial quadrature of order {d} did not settle below {tol:e} with {MAX_RADIAL_NODES} nodes"
        )))
    }

    fn real_line(&self) -> Result<Rule> {
        composite_legendre(-self.cutoff, self.cutoff, self.panels, self.panel_nodes)
    }
}

/// Finite Laurent sum `Σ c_p z^p`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Laurent(pub BTreeMap<i32, C64>);

impl Laurent {
    pub fn phi(lambda: f64, n: usize) -> Self {
        let c = phi_coefficient(lambda, n) * C64::new(0.0, -1.0).powu(n as u32);
        Self(BTreeMap::from([(n as i32, c)]))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = BTreeMap::new();
        for (p, a) in &self.0 {
            for (q, b) in &other.0 {
                *out.entry(p + q).or_insert(C64::new(0.0, 0.0)) += a * b;
            }
        }
        Self(out)
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.0.iter().map(|(p, c)| c * z.powi(*p)).sum()
    }
}

/// `i(1 − z²)/(2z)`.
pub fn literal_multiplier() -> Laurent {
    Laurent(BTreeMap::from([
        (-1, C64::new(0.0, 0.5)),
        (1, C64::new(0.0, -0.5)),
    ]))
}

/// `(−iz/2 + i n(n+2λ−1)/(2z)) Φ_{λ,n}`, the image of `x 𝔭_n` obtained from the recurrence.
pub fn image_of_x(lambda: f64, n: usize) -> Laurent {
    let q = n as f64 * (n as f64 + 2.0 * lambda - 1.0);
    let factor = Laurent(BTreeMap::from([
        (-1, C64::new(0.0, 0.5 * q)),
        (1, C64::new(0.0, -0.5)),
    ]));
    factor.mul(&Laurent::phi(lambda, n))
}

/// Laurent monomials in the basis, normalized to the `(−iz)^n` convention.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Monomial {
    coeff: f64,
    degree: usize,
}

impl Monomial {
    fn phi(lambda: f64, n: usize) -> Self {
        Self {
            coeff: phi_coefficient(lambda, n),
            degree: n,
        }
    }

    /// `−iz · (−iz)^n = (−iz)^{n+1}`.
    fn times_minus_iz(self) -> Self {
        Self {
            coeff: self.coeff,
            degree: self.degree + 1,
        }
    }

    /// `i d/dz (−iz)^n = n (−iz)^{n−1}`.
    fn i_derivative(self) -> Option<Self> {
        (self.degree > 0).then(|| Self {
            coeff: self.coeff * self.degree as f64,
            degree: self.degree - 1,
        })
    }

    /// `z d/dz (−iz)^n = n (−iz)^n`.
    fn euler(self) -> Self {
        Self {
            coeff: self.coeff * self.degree as f64,
            degree: self.degree,
        }
    }
}

/// Cached real-line data and the checks built from it.
pub struct SbModel {
    pub ctx: SbContext,
    n_max: usize,
    line: Rule,
    /// `mp[j][n] = 𝔭_n(x_j)`, `n ≤ n_max + 1`.
    mp: Vec<Vec<f64>>,
    angles: Rule,
}

impl SbModel {
    pub fn new(ctx: SbContext, n_max: usize) -> Result<Self> {
        let line = ctx.real_line()?;
        let l = ctx.lambda();
        let mp = line
            .nodes
            .par_iter()
            .map(|x| mp_functions(l, n_max + 1, *x))
            .collect::<Result<_>>()?;
        let angles = trapezoid_circle(ctx.angular_nodes)?;
        Ok(Self {
            ctx,
            n_max,
            line,
            mp,
            angles,
        })
    }

    pub fn lambda(&self) -> f64 {
        self.ctx.lambda()
    }

    fn check_degree(&self, n: usize) -> Result<()> {
        if n > self.n_max {
            return Err(invalid(format!(
                "degree {n} exceeds the prepared n_max = {}",
                self.n_max
            )));
        }
        Ok(())
    }

    /// `⟨f, g⟩ = ∫ f ḡ ν(|z|) dz` for Laurent sums, angle first.
    ///
    /// Radial moments are formed only for terms whose angular integral
    /// survives, so a term such as `1/z` paired with a constant never asks for
    /// a divergent radial moment.
    pub fn inner(&self, f: &Laurent, g: &Laurent) -> Result<(C64, usize)> {
        let mut total = C64::new(0.0, 0.0);
        let mut nodes = 0;
        for (p, a) in &f.0 {
            for (q, b) in &g.0 {
                let ang: C64 = self
                    .angles
                    .nodes
                    .iter()
                    .zip(&self.angles.weights)
                    .map(|(phi, w)| *w * C64::from_polar(1.0, f64::from(p - q) * phi))
                    .sum();
                if ang.norm() < 1e-12 {
                    continue;
                }
                let (rad, used) =
                    self.ctx
                        .radial_integral(p + q, ORTHONORMALITY_TOLERANCE * 1e-2, |_| {
                            C64::new(1.0, 0.0)
                        })?;
                nodes = nodes.max(used * self.angles.len());
                total += a * b.conj() * ang * rad;
            }
        }
        Ok((total, nodes))
    }

    /// `∫_ℂ Φ_n Φ̄_m ν(|z|) dz = δ_{nm}`.
    pub fn orthonormality_c(&self, n: usize, m: usize) -> Result<IdentityCheck> {
        let l = self.lambda();
        let (v, nodes) = self.inner(&Laurent::phi(l, n), &Laurent::phi(l, m))?;
        let want = if n == m { 1.0 } else { 0.0 };
        Ok(IdentityCheck::new(
            "orthonormality_c",
            l,
            v,
            C64::new(want, 0.0),
            ORTHONORMALITY_TOLERANCE,
            nodes,
        )
        .with_n(n)
        .with_m(m))
    }

    /// `∫_ℝ 𝔭_n 𝔭_m dx = δ_{nm}` on `[−X, X]` with the neglected tail estimated.
    pub fn orthonormality_r(&self, n: usize, m: usize) -> Result<IdentityCheck> {
        self.check_degree(n.max(m))?;
        let l = self.lambda();
        let v: f64 = self
            .mp
            .iter()
            .zip(&self.line.weights)
            .map(|(p, w)| w * p[n] * p[m])
            .sum();
        let want = if n == m { 1.0 } else { 0.0 };
        let x = self.ctx.cutoff;
        let edge = mp_functions(l, n.max(m), x)?;
        // |Γ(λ+ix)|² decays like e^{−π|x|}: both tails together are about 2 f(X)/π
        let tail = 2.0 * (edge[n] * edge[m]).abs() / PI;
        let mut c = IdentityCheck::new(
            "orthonormality_r",
            l,
            C64::new(v, 0.0),
            C64::new(want, 0.0),
            ORTHONORMALITY_TOLERANCE,
            self.line.len(),
        )
        .with_n(n)
        .with_m(m);
        c.tail_estimate = Some(tail);
        Ok(c)
    }

    fn kernel_on_line(&self, z: C64) -> Result<(Vec<C64>, f64)> {
        let l = self.lambda();
        let vals: Vec<(C64, f64)> = self
            .line
            .nodes
            .par_iter()
            .map(|x| transform_kernel_g(l, *x, z))
            .collect::<Result<_>>()?;
        let lost = vals.iter().map(|v| v.1).fold(0.0, f64::max);
        Ok((vals.into_iter().map(|v| v.0).collect(), lost))
    }

    fn integrate_line(&self, g: &[C64], f: impl Fn(usize) -> f64) -> C64 {
        g.iter()
            .zip(&self.line.weights)
            .enumerate()
            .map(|(j, (gv, w))| *gv * (w * f(j)))
            .sum()
    }

    /// `∫ G_λ(x̄, z) 𝔭_n(x) dx = Φ_{λ,n}(z)` for `n ≤ n_max`.
    pub fn transform_checks(&self, z: C64) -> Result<Vec<IdentityCheck>> {
        let l = self.lambda();
        let (g, lost) = self.kernel_on_line(z)?;
        Ok((0..=self.n_max)
            .map(|n| {
                let v = self.integrate_line(&g, |j| self.mp[j][n]);
                let mut c = IdentityCheck::new(
                    "transform",
                    l,
                    v,
                    basis_phi(l, n, z),
                    TRANSFORM_TOLERANCE,
                    self.line.len(),
                )
                .with_n(n)
                .with_z(z);
                c.digits_lost = Some(lost);
                c
            })
            .collect())
    }

    /// `∫ |G_λ(x̄, z)|² dx` against the Bessel form `K^(λ)(z, z)`.
    pub fn kernel_identity(&self, z: C64) -> Result<IdentityCheck> {
        let l = self.lambda();
        let (g, lost) = self.kernel_on_line(z)?;
        let v: f64 = g
            .iter()
            .zip(&self.line.weights)
            .map(|(gv, w)| w * gv.norm_sqr())
            .sum();
        let mut c = IdentityCheck::new(
            "kernel_identity",
            l,
            C64::new(v, 0.0),
            kernel_diagonal_bessel(l, z),
            TRANSFORM_TOLERANCE,
            self.line.len(),
        )
        .with_z(z);
        c.digits_lost = Some(lost);
        Ok(c)
    }

    /// `∫ G_λ(x̄, z) x 𝔭_n(x) dx` against three right-hand sides: the literal
    /// multiplier `i(1−z²)/(2z) Φ_n`, the recurrence combination
    /// `½√((n+1)(n+2λ)) Φ_{n+1} + ½√(n(n+2λ−1)) Φ_{n−1}`, and its closed form
    /// `(−iz/2 + i n(n+2λ−1)/(2z)) Φ_n`.
    pub fn mult_checks(&self, n: usize, z: C64) -> Result<Vec<IdentityCheck>> {
        self.check_degree(n)?;
        if z.norm() < POLE_GUARD {
            return Err(invalid(format!(
                "|z| = {} is inside the pole guard {POLE_GUARD}",
                z.norm()
            )));
        }
        let l = self.lambda();
        let (g, lost) = self.kernel_on_line(z)?;
        let lhs = self.integrate_line(&g, |j| self.line.nodes[j] * self.mp[j][n]);
        let nf = n as f64;
        let literal = literal_multiplier().eval(z) * basis_phi(l, n, z);
        let up = 0.5 * ((nf + 1.0) * (nf + 2.0 * l)).sqrt() * basis_phi(l, n + 1, z);
        let down = if n == 0 {
            C64::new(0.0, 0.0)
        } else {
            0.5 * (nf * (nf + 2.0 * l - 1.0)).sqrt() * basis_phi(l, n - 1, z)
        };
        let closed = image_of_x(l, n).eval(z);
        Ok([
            ("mult_literal", literal),
            ("mult_recurrence", up + down),
            ("mult_image", closed),
        ]
        .into_iter()
        .map(|(name, rhs)| {
            let mut c = IdentityCheck::new(name, l, lhs, rhs, TRANSFORM_TOLERANCE, self.line.len())
                .with_n(n)
                .with_z(z);
            c.digits_lost = Some(lost);
            c
        })
        .collect())
    }

    /// Creation, annihilation and number relations by coefficient comparison,
    /// each also evaluated at `z`.
    pub fn ladder_checks(&self, n: usize, z: C64) -> Vec<IdentityCheck> {
        let l = self.lambda();
        let nf = n as f64;
        let phi = Monomial::phi(l, n);
        let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(f64::MIN_POSITIVE);
        let eval = |m: Monomial| m.coeff * (C64::new(0.0, -1.0) * z).powu(m.degree as u32);
        let mut out = Vec::new();

        let up = phi.times_minus_iz();
        let want = ((nf + 1.0) * (nf + 2.0 * l)).sqrt() * phi_coefficient(l, n + 1);
        let mut c = IdentityCheck::new(
            "ladder_creation",
            l,
            eval(up),
            eval(Monomial {
                coeff: want,
                degree: n + 1,
            }),
            ALGEBRAIC_TOLERANCE,
            0,
        )
        .with_n(n)
        .with_z(z);
        c.residual = rel(up.coeff, want);
        c.passed = c.residual <= ALGEBRAIC_TOLERANCE;
        out.push(c);

        if let Some(down) = phi.i_derivative() {
            let want = (nf / (nf + 2.0 * l - 1.0)).sqrt() * phi_coefficient(l, n - 1);
            let mut c = IdentityCheck::new(
                "ladder_annihilation",
                l,
                eval(down),
                eval(Monomial {
                    coeff: want,
                    degree: n - 1,
                }),
                ALGEBRAIC_TOLERANCE,
                0,
            )
            .with_n(n)
            .with_z(z);
            c.residual = rel(down.coeff, want);
            c.passed = c.residual <= ALGEBRAIC_TOLERANCE;
            out.push(c);
        }

        let num = phi.euler();
        let want = nf * phi.coeff;
        let mut c = IdentityCheck::new(
            "number",
            l,
            eval(num),
            eval(Monomial {
                coeff: want,
                degree: n,
            }),
            ALGEBRAIC_TOLERANCE,
            0,
        )
        .with_n(n)
        .with_z(z);
        c.residual = if want == 0.0 {
            num.coeff.abs()
        } else {
            rel(num.coeff, want)
        };
        c.passed = c.residual <= ALGEBRAIC_TOLERANCE;
        out.push(c);
        out
    }

    /// `⟨M Φ_n, Φ_m⟩` against `⟨Φ_n, M Φ_m⟩` for multiplication by `i(1−z²)/(2z)`.
    pub fn symmetry_literal(&self, n: usize, m: usize) -> Result<IdentityCheck> {
        let l = self.lambda();
        let mult = literal_multiplier();
        let (lhs, a) = self.inner(&mult.mul(&Laurent::phi(l, n)), &Laurent::phi(l, m))?;
        let (rhs, b) = self.inner(&Laurent::phi(l, n), &mult.mul(&Laurent::phi(l, m)))?;
        Ok(IdentityCheck::new(
            "symmetry_literal",
            l,
            lhs,
            rhs,
            ORTHONORMALITY_TOLERANCE,
            a.max(b),
        )
        .with_n(n)
        .with_m(m))
    }

    /// `⟨X Φ_n, Φ_m⟩` against `⟨Φ_n, X Φ_m⟩` for the recurrence image `X`.
    pub fn symmetry_image(&self, n: usize, m: usize) -> Result<IdentityCheck> {
        let l = self.lambda();
        let (lhs, a) = self.inner(&image_of_x(l, n), &Laurent::phi(l, m))?;
        let (rhs, b) = self.inner(&Laurent::phi(l, n), &image_of_x(l, m))?;
        Ok(IdentityCheck::new(
            "symmetry_image",
            l,
            lhs,
            rhs,
            ORTHONORMALITY_TOLERANCE,
            a.max(b),
        )
        .with_n(n)
        .with_m(m))
    }

    /// `⟨X Φ_n, Φ_m⟩` against the Jacobi entry, zero unless `|n − m| = 1`.
    pub fn tridiagonality(&self, n: usize, m: usize) -> Result<IdentityCheck> {
        let l = self.lambda();
        let (v, nodes) = self.inner(&image_of_x(l, n), &Laurent::phi(l, m))?;
        let want = match m {
            _ if m == n + 1 => 0.5 * ((n as f64 + 1.0) * (n as f64 + 2.0 * l)).sqrt(),
            _ if m + 1 == n => 0.5 * (n as f64 * (n as f64 + 2.0 * l - 1.0)).sqrt(),
            _ => 0.0,
        };
        Ok(IdentityCheck::new(
            "tridiagonality",
            l,
            v,
            C64::new(want, 0.0),
            ORTHONORMALITY_TOLERANCE,
            nodes,
        )
        .with_n(n)
        .with_m(m))
    }

    /// `∫ K^(λ)(z, w) f(w) ν(|w|) dw = f(z)` for `f = Σ c_m Φ_m`.
    pub fn reproducing(&self, coeffs: &[C64], z: C64) -> Result<IdentityCheck> {
        let l = self.lambda();
        let f = |w: C64| -> C64 {
            coeffs
                .iter()
                .enumerate()
                .map(|(m, c)| c * basis_phi(l, m, w))
                .sum()
        };
        let angles = &self.angles;
        let (v, nodes) = self
            .ctx
            .radial_integral(0, TRANSFORM_TOLERANCE * 1e-2, |r| {
                angles
                    .nodes
                    .iter()
                    .zip(&angles.weights)
                    .map(|(phi, w)| {
                        let pt = C64::from_polar(r, *phi);
                        *w * kernel_k(l, z, pt) * f(pt)
                    })
                    .sum()
            })?;
        Ok(IdentityCheck::new(
            "reproducing",
            l,
            v,
            f(z),
            TRANSFORM_TOLERANCE,
            nodes * angles.len(),
        )
        .with_z(z))
    }

    /// `K^(λ)(t, τ)` against `Σ_{n ≤ terms} Φ_n(t) Φ̄_n(τ)`.
    pub fn kernel_sum(&self, t: C64, tau: C64, terms: usize) -> IdentityCheck {
        let l = self.lambda();
        let sum: C64 = (0..=terms)
            .map(|n| basis_phi(l, n, t) * basis_phi(l, n, tau).conj())
            .sum();
        IdentityCheck::new("kernel_sum", l, kernel_k(l, t, tau), sum, 1e-10, 0).with_z(t)
    }

    /// Every identity at degrees `≤ n_max` and the sample points.
    pub fn verify_all(&self, points: &[C64]) -> Result<Vec<IdentityCheck>> {
        let n_max = self.n_max;
        let mut out = Vec::new();
        for n in 0..=n_max {
            for m in 0..=n_max {
                out.push(self.orthonormality_c(n, m)?);
                out.push(self.orthonormality_r(n, m)?);
            }
        }
        out.push(prudnikov_check(2.0, 0.5, 2.0)?);
        for &z in points {
            out.extend(self.transform_checks(z)?);
            out.push(self.kernel_identity(z)?);
            out.push(self.kernel_sum(z, z.conj() * 0.5, 60));
            for n in 0..=n_max {
                out.extend(self.mult_checks(n, z)?);
                out.extend(self.ladder_checks(n, z));
            }
        }
        for n in 0..=n_max {
            for m in 0..=n_max {
                out.push(self.symmetry_literal(n, m)?);
                out.push(self.symmetry_image(n, m)?);
                out.push(self.tridiagonality(n, m)?);
            }
        }
        if let Some(&z) = points.first() {
            let coeffs: Vec<C64> = (0..=5.min(n_max))
                .map(|m| C64::new(1.0 / (m as f64 + 1.0), 0.5 - 0.1 * m as f64))
                .collect();
            out.push(self.reproducing(&coeffs, z)?);
        }
        Ok(out)
    }
}

/// `∫₀^∞ x^{α−1} K_ν(cx) dx = 2^{α−2} c^{−α} Γ((α+ν)/2) Γ((α−ν)/2)` for `α > |ν|`.
///
/// The quadrature side uses the integral representation of `K_ν`, not the
/// closed forms.
pub fn prudnikov_check(alpha: f64, nu: f64, c: f64) -> Result<IdentityCheck> {
    if !(alpha > nu.abs()) || !(c > 0.0) {
        return Err(invalid("moment formula needs α > |ν| and c > 0"));
    }
    let closed = (alpha - 2.0) * 2f64.ln() - alpha * c.ln()
        + ln_gamma_real((alpha + nu) / 2.0)
        + ln_gamma_real((alpha - nu) / 2.0);
    let closed = closed.exp();
    // s = c x: c^{−α} ∫ s^{α−1} K_ν(s) ds, weight s^{α−1−|ν|} e^{−s}
    let a = alpha - 1.0 - nu.abs();
    let mut last = f64::NAN;
    let mut n = 16;
    let value = loop {
        let r = gauss_laguerre(n, a)?;
        let v = r.integrate(|s| bessel_k(nu, s) * s.exp() * s.powf(nu.abs())) * c.powf(-alpha);
        if (v - last).abs() <= 1e-13 * v.abs() || n >= 256 {
            break v;
        }
        last = v;
        n *= 2;
    };
    Ok(IdentityCheck::new(
        "prudnikov",
        f64::NAN,
        C64::new(value, 0.0),
        C64::new(closed, 0.0),
        PRUDNIKOV_TOLERANCE,
        n,
    ))
}
