//! Truncated exponentials `exp(i t A^(k))` and their behaviour as the
//! truncation grows.
//!
//! On a block, `A^(k,i) = D J D*` with `D = diag(ω^p)` and `J` real symmetric
//! tridiagonal, so `exp(itA) = D Q e^{itΛ} Qᵀ D*`. At fixed dimension every
//! truncation is unitary and obeys the group law; the order `k` only shows up
//! when the dimension changes.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{Cplx, PrecisionConfig, Real, Scalar};
use crate::error::{invalid, Result};
use crate::fock::{
    block_len, block_off_diagonal, build_block_matrix, build_full_matrix, check_block, cplx_pow,
    fock_index, omega, BlockIndex, ExactRadicalVector,
};
use crate::linalg::{expm_taylor, tridiagonal_eigen, CMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    EigTridiagonal,
    ScalingSquaring,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    Block(u32),
    Full,
}

#[derive(Debug, Clone)]
pub struct TruncatedUnitary<T> {
    pub k: u32,
    pub scope: Scope,
    pub theta: T,
    /// Time already multiplied by `|ξ|`.
    pub t: T,
    pub n: usize,
    /// Method that produced `matrix`, after any fallback.
    pub method: Method,
    pub matrix: CMatrix<T>,
}

impl<T: Scalar> TruncatedUnitary<T> {
    pub fn unitarity_residual(&self) -> f64 {
        self.matrix.unitarity_residual()
    }
}

/// `exp(i t A)` truncated to `n` basis vectors of a block or of the whole
/// space. The eigen route falls back to scaling and squaring if the
/// eigensolver fails.
pub fn truncated_exponential<T: Scalar>(
    k: u32,
    scope: Scope,
    theta: &T,
    t: &T,
    n: usize,
    method: Method,
) -> Result<TruncatedUnitary<T>> {
    if n < 2 {
        return Err(invalid("truncation dimension must be at least 2"));
    }
    if !theta.is_finite() || !t.is_finite() {
        return Err(invalid("θ and t must be finite"));
    }
    if let Scope::Block(i) = scope {
        check_block(k, i)?;
    } else if k == 0 {
        return Err(invalid("order k must be at least 1"));
    }
    let (matrix, used) = match method {
        Method::EigTridiagonal => match Spectrum::new(k, scope, theta, n) {
            Ok(sp) => (sp.exponential(t), Method::EigTridiagonal),
            Err(_) => (
                series_exponential(k, scope, theta, t, n)?,
                Method::ScalingSquaring,
            ),
        },
        Method::ScalingSquaring => (
            series_exponential(k, scope, theta, t, n)?,
            Method::ScalingSquaring,
        ),
    };
    Ok(TruncatedUnitary {
        k,
        scope,
        theta: theta.clone(),
        t: t.clone(),
        n,
        method: used,
        matrix,
    })
}

fn series_exponential<T: Scalar>(
    k: u32,
    scope: Scope,
    theta: &T,
    t: &T,
    n: usize,
) -> Result<CMatrix<T>> {
    let m = match scope {
        Scope::Block(i) => build_block_matrix(k, i, theta, n)?,
        Scope::Full => build_full_matrix(k, theta, n)?,
    };
    let it = Cplx::new(t.zero_like(), t.clone());
    Ok(expm_taylor(&m.scale(&it)))
}

/// Eigendecomposition `J = QΛQᵀ` of one block truncation, reusable for any `t`.
#[derive(Debug, Clone)]
pub struct BlockSpectrum<T> {
    pub i: u32,
    pub len: usize,
    pub values: Vec<T>,
    /// Leading rows of `Q`.
    pub vectors: Vec<Vec<T>>,
    phases: Vec<Cplx<T>>,
}

impl<T: Scalar> BlockSpectrum<T> {
    /// Keeps the leading `rows` rows of `Q`, enough for the top-left corner.
    pub fn new(k: u32, i: u32, theta: &T, len: usize, rows: usize) -> Result<Self> {
        check_block(k, i)?;
        let rows = rows.min(len);
        let (values, vectors) = if len == 1 {
            (vec![theta.zero_like()], vec![vec![theta.one_like()]])
        } else {
            let diag = vec![theta.zero_like(); len];
            let off = block_off_diagonal(k, i, len, theta);
            let eig = tridiagonal_eigen(&diag, &off, rows)?;
            (eig.values, eig.vectors)
        };
        let w = omega(theta);
        let phases = (0..rows).map(|p| cplx_pow(&w, p as i64)).collect();
        Ok(BlockSpectrum {
            i,
            len,
            values,
            vectors,
            phases,
        })
    }

    /// Top-left corner of `D Q e^{itΛ} Qᵀ D*` on the stored rows.
    pub fn corner(&self, t: &T) -> Vec<Vec<Cplx<T>>> {
        let like = &self.values[0];
        let rows = self.vectors.len();
        let (cos, sin): (Vec<T>, Vec<T>) = self
            .values
            .iter()
            .map(|l| {
                let x = l.clone() * t;
                (x.cos(), x.sin())
            })
            .unzip();
        let q = &self.vectors;
        let scaled = |f: &[T]| -> Vec<Vec<T>> {
            q.iter()
                .map(|r| r.iter().zip(f).map(|(a, c)| a.clone() * c).collect())
                .collect()
        };
        let (qc, qs) = (scaled(&cos), scaled(&sin));
        let upper: Vec<Vec<Cplx<T>>> = (0..rows)
            .into_par_iter()
            .map(|a| {
                (a..rows)
                    .map(|b| {
                        let mut re = like.zero_like();
                        let mut im = like.zero_like();
                        for j in 0..self.len {
                            re.add_mul(&q[a][j], &qc[b][j]);
                            im.add_mul(&q[a][j], &qs[b][j]);
                        }
                        Cplx::new(re, im)
                    })
                    .collect()
            })
            .collect();
        let ph = &self.phases;
        let mut out = vec![vec![Cplx::zero_like(like); rows]; rows];
        for a in 0..rows {
            for b in a..rows {
                let v = &upper[a][b - a];
                out[a][b] = ph[a].clone() * v * &ph[b].conj();
                if a != b {
                    out[b][a] = ph[b].clone() * v * &ph[a].conj();
                }
            }
        }
        out
    }
}

/// Spectra of every block a truncation touches.
#[derive(Debug, Clone)]
pub struct Spectrum<T> {
    pub k: u32,
    pub scope: Scope,
    pub n: usize,
    pub blocks: Vec<BlockSpectrum<T>>,
}

impl<T: Scalar> Spectrum<T> {
    pub fn new(k: u32, scope: Scope, theta: &T, n: usize) -> Result<Self> {
        let blocks = match scope {
            Scope::Block(i) => vec![BlockSpectrum::new(k, i, theta, n, n)?],
            Scope::Full => (0..k)
                .filter_map(|i| {
                    let len = block_len(k, i, n);
                    (len > 0).then(|| BlockSpectrum::new(k, i, theta, len, len))
                })
                .collect::<Result<_>>()?,
        };
        Ok(Spectrum {
            k,
            scope,
            n,
            blocks,
        })
    }

    pub fn exponential(&self, t: &T) -> CMatrix<T> {
        let like = &self.blocks[0].values[0];
        let mut out = CMatrix::zeros(self.n, self.n, like);
        for b in &self.blocks {
            let c = b.corner(t);
            for (p, row) in c.iter().enumerate() {
                for (q, v) in row.iter().enumerate() {
                    let (r, s) = match self.scope {
                        Scope::Block(_) => (p, q),
                        Scope::Full => (
                            fock_index(self.k, b.i, p as u64) as usize,
                            fock_index(self.k, b.i, q as u64) as usize,
                        ),
                    };
                    out.set(r, s, v.clone());
                }
            }
        }
        out
    }
}

/// `‖U(s+t) − U(s)U(t)‖_max` at fixed dimension.
///
/// On the eigen route the three unitaries share one decomposition, so the
/// residual measures the orthogonality of `Q` and the rounding of the phases.
pub fn group_law_residual<T: Scalar>(
    k: u32,
    scope: Scope,
    theta: &T,
    s: &T,
    t: &T,
    n: usize,
    method: Method,
) -> Result<f64> {
    let st = s.clone() + t;
    let [us, ut, ust] = unitaries(k, scope, theta, [s, t, &st], n, method)?;
    Ok(us.matmul(&ut).max_abs_diff(&ust))
}

/// `‖U(−t) − U(t)*‖_max` at fixed dimension.
pub fn inverse_residual<T: Scalar>(
    k: u32,
    scope: Scope,
    theta: &T,
    t: &T,
    n: usize,
    method: Method,
) -> Result<f64> {
    let mt = -t.clone();
    let [u, v] = unitaries(k, scope, theta, [t, &mt], n, method)?;
    Ok(v.max_abs_diff(&u.adjoint()))
}

fn unitaries<T: Scalar, const M: usize>(
    k: u32,
    scope: Scope,
    theta: &T,
    times: [&T; M],
    n: usize,
    method: Method,
) -> Result<[CMatrix<T>; M]> {
    let out: Vec<CMatrix<T>> = match method {
        Method::EigTridiagonal => {
            let sp = Spectrum::new(k, scope, theta, n)?;
            times.iter().map(|t| sp.exponential(t)).collect()
        }
        Method::ScalingSquaring => times
            .iter()
            .map(|t| series_exponential(k, scope, theta, t, n))
            .collect::<Result<_>>()?,
    };
    Ok(out
        .try_into()
        .unwrap_or_else(|_| unreachable!("one matrix per time")))
}

/// Partial sums of `Σ (it)ⁿ/n! Aⁿ f` for a block vector `f`.
#[derive(Debug, Clone)]
pub struct TaylorResult {
    /// Coefficients of the partial sum at block positions `0, 1, …`.
    pub coefficients: Vec<Cplx<Real>>,
    /// `‖(it)ⁿ/n! Aⁿ f‖` for `n = 0..=N`.
    pub term_norms: Vec<f64>,
    pub diverging: bool,
    pub converged: bool,
}

/// Terms of the trailing window that must all increase to flag divergence.
const DIVERGENCE_WINDOW: usize = 10;

/// Sums the exponential series on `f = Σ c_p e_p` with every `Aⁿ e_p` formed
/// exactly and rounded only when added in.
pub fn taylor_apply(
    k: u32,
    i: u32,
    theta: &Real,
    t: &Real,
    f: &[(u64, Cplx<Real>)],
    n_terms: usize,
    prec: &PrecisionConfig,
) -> Result<TaylorResult> {
    check_block(k, i)?;
    if f.is_empty() {
        return Err(invalid("f must have at least one component"));
    }
    let like = prec.real(0.0);
    let width = f.iter().map(|(p, _)| *p as usize).max().unwrap_or(0) + n_terms + 1;
    let mut terms = vec![vec![Cplx::zero_like(&like); width]; n_terms + 1];
    for (p, c) in f {
        let mut v = ExactRadicalVector::basis(BlockIndex::new(k, i, *p)?);
        let mut weight = c.clone();
        for (n, term) in terms.iter_mut().enumerate() {
            if n > 0 {
                v = v.apply_block();
                // weight = c (it)ⁿ/n!
                weight = weight.mul_i().scale(&(t.clone() / like.lift_int(n as i64)));
            }
            for (q, val) in v.to_numeric(theta) {
                term[q as usize].fma_assign(&weight, &val);
            }
        }
    }
    let term_norms: Vec<f64> = terms
        .iter()
        .map(|v| {
            let mut s = like.zero_like();
            for c in v {
                s += c.norm_sqr();
            }
            s.sqrt().to_f64()
        })
        .collect();
    let mut coefficients = vec![Cplx::zero_like(&like); width];
    for v in &terms {
        for (slot, c) in coefficients.iter_mut().zip(v) {
            *slot += c;
        }
    }
    let sum_norm = coefficients
        .iter()
        .map(|c| c.norm_sqr().to_f64())
        .sum::<f64>()
        .sqrt();
    let tail = &term_norms[term_norms.len().saturating_sub(DIVERGENCE_WINDOW + 1)..];
    let diverging = tail.len() > DIVERGENCE_WINDOW && tail.windows(2).all(|w| w[1] > w[0]);
    let last = *term_norms.last().expect("n_terms + 1 entries");
    Ok(TaylorResult {
        coefficients,
        term_norms,
        diverging,
        converged: !diverging && last <= prec.tau() * sum_norm,
    })
}

/// `e^{−|z|²/2} zⁿ/√(n!)` for `n < len`, the Fock coefficients of `D(z)e_0`.
pub fn coherent_oracle(z: &Cplx<Real>, len: usize) -> Vec<Cplx<Real>> {
    let like = &z.re;
    let half = like.lift(0.5);
    let mut c = Cplx::real((-(z.norm_sqr() * &half)).exp());
    let mut out = Vec::with_capacity(len);
    for n in 0..len {
        out.push(c.clone());
        c = (c * z).div_real(&like.lift_int(n as i64 + 1).sqrt());
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StabilizationVerdict {
    Stabilizes,
    DoesNotStabilize,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilizationReport {
    pub k: u32,
    pub theta: f64,
    pub t: f64,
    pub window: usize,
    pub dims: Vec<usize>,
    /// `max |U_N − U_{N'}|` over the top-left `w × w` corner, per consecutive pair.
    pub deltas: Vec<f64>,
    /// Column 0 of the corner at the largest dimension, as `(re, im)`.
    pub column0: Vec<(f64, f64)>,
    pub verdict: StabilizationVerdict,
}

/// Deltas under which consecutive corners count as equal.
pub const NOISE_FLOOR: f64 = 1e-13;
pub const STABLE_TOLERANCE: f64 = 1e-8;
pub const UNSTABLE_THRESHOLD: f64 = 1e-2;

/// Watches the top-left `w × w` corner of `exp(itA^(k))` as the truncation
/// grows, in double precision.
pub fn stabilization_study(
    k: u32,
    theta: f64,
    t: f64,
    dims: &[usize],
    w: usize,
) -> Result<StabilizationReport> {
    if k == 0 {
        return Err(invalid("order k must be at least 1"));
    }
    if dims.len() < 2 || dims.windows(2).any(|d| d[1] <= d[0]) {
        return Err(invalid(
            "dims must be strictly increasing with at least two entries",
        ));
    }
    if w == 0 || w > dims[0] {
        return Err(invalid("window must satisfy 1 ≤ w ≤ min(dims)"));
    }
    let corners: Vec<Vec<Vec<Cplx<f64>>>> = dims
        .par_iter()
        .map(|&n| full_corner(k, theta, t, n, w))
        .collect::<Result<_>>()?;
    let deltas: Vec<f64> = corners
        .windows(2)
        .map(|c| {
            c[0].iter()
                .flatten()
                .zip(c[1].iter().flatten())
                .map(|(a, b)| (a.clone() - b).abs())
                .fold(0.0, f64::max)
        })
        .collect();
    let last = corners.last().expect("two or more dims");
    let column0 = last.iter().map(|r| (r[0].re, r[0].im)).collect();
    Ok(StabilizationReport {
        k,
        theta,
        t,
        window: w,
        dims: dims.to_vec(),
        verdict: stabilization_verdict(&deltas),
        deltas,
        column0,
    })
}

/// Stabilizes: final delta below [`STABLE_TOLERANCE`] and each of the last
/// three deltas either shrinks or sits at the noise floor. Does not
/// stabilize: final delta above [`UNSTABLE_THRESHOLD`] and none of the last
/// three deltas at most half its predecessor.
pub fn stabilization_verdict(deltas: &[f64]) -> StabilizationVerdict {
    let last = *deltas.last().expect("at least one delta");
    let from = deltas.len().saturating_sub(3);
    let tail = &deltas[from..];
    let prev = |j: usize| {
        if from + j == 0 {
            None
        } else {
            Some(deltas[from + j - 1])
        }
    };
    let shrinking =
        (0..tail.len()).all(|j| tail[j] < NOISE_FLOOR || prev(j).is_none_or(|p| tail[j] < p));
    let contracting = (0..tail.len()).any(|j| prev(j).is_some_and(|p| tail[j] <= 0.5 * p));
    if last < STABLE_TOLERANCE && shrinking {
        StabilizationVerdict::Stabilizes
    } else if last > UNSTABLE_THRESHOLD && !contracting {
        StabilizationVerdict::DoesNotStabilize
    } else {
        StabilizationVerdict::Inconclusive
    }
}

fn full_corner(k: u32, theta: f64, t: f64, n: usize, w: usize) -> Result<Vec<Vec<Cplx<f64>>>> {
    let mut out = vec![vec![Cplx::new(0.0, 0.0); w]; w];
    for i in 0..k {
        let rows = block_len(k, i, w);
        if rows == 0 {
            continue;
        }
        let c = BlockSpectrum::new(k, i, &theta, block_len(k, i, n), rows)?.corner(&t);
        for a in 0..rows {
            for b in 0..rows {
                let r = fock_index(k, i, a as u64) as usize;
                let s = fock_index(k, i, b as u64) as usize;
                out[r][s] = c[a][b].clone();
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecompositionCheck {
    /// `max |exp(itA^(2)) − exp(itA^(2,0)) ⊕ exp(itA^(2,1))|`.
    pub residual: f64,
    /// Entries coupling even and odd Fock vectors are exactly zero.
    pub cross_terms_zero: bool,
}

/// Exponentiates the full `k = 2` truncation by scaling and squaring and
/// compares it with the interleaved block exponentials from the eigen route.
pub fn squeeze_decomposition_check(
    t: &Real,
    xi: &Cplx<Real>,
    n: usize,
) -> Result<DecompositionCheck> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(invalid("N must be even and at least 2"));
    }
    let theta = if xi.abs().is_zero() {
        t.zero_like()
    } else {
        xi.im.atan2(&xi.re)
    };
    let ts = t.clone() * &xi.abs();
    let full = truncated_exponential(2, Scope::Full, &theta, &ts, n, Method::ScalingSquaring)?;
    let blocks = Spectrum::new(2, Scope::Full, &theta, n)?.exponential(&ts);
    let mut cross_zero = true;
    for r in 0..n {
        for c in 0..n {
            if (r + c) % 2 == 1 {
                let v = full.matrix.get(r, c);
                cross_zero &= v.re.is_zero() && v.im.is_zero();
            }
        }
    }
    Ok(DecompositionCheck {
        residual: full.matrix.max_abs_diff(&blocks),
        cross_terms_zero: cross_zero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prec(d: u32) -> PrecisionConfig {
        PrecisionConfig::with_digits(d).unwrap()
    }

    #[test]
    fn zero_time_is_identity() {
        let p = prec(30);
        let (th, t) = (p.real(0.7), p.real(0.0));
        for method in [Method::EigTridiagonal, Method::ScalingSquaring] {
            let u = truncated_exponential(3, Scope::Full, &th, &t, 12, method).unwrap();
            assert!(u.matrix.max_abs_diff(&CMatrix::identity(12, &th)) < p.tau());
        }
    }

    #[test]
    fn methods_agree() {
        let p = prec(30);
        let (th, t) = (p.real(0.4), p.real(0.8));
        for k in 1..=3 {
            let a =
                truncated_exponential(k, Scope::Full, &th, &t, 16, Method::EigTridiagonal).unwrap();
            let b = truncated_exponential(k, Scope::Full, &th, &t, 16, Method::ScalingSquaring)
                .unwrap();
            assert!(a.matrix.max_abs_diff(&b.matrix) < 10.0 * p.tau(), "k = {k}");
        }
    }

    #[test]
    fn cubic_block_unitary() {
        let p = prec(25);
        let u = truncated_exponential(
            3,
            Scope::Block(0),
            &p.real(0.0),
            &p.real(1.0),
            64,
            Method::EigTridiagonal,
        )
        .unwrap();
        assert!(u.unitarity_residual() < 1e-10);
    }

    #[test]
    fn coherent_values() {
        let p = prec(30);
        let z = Cplx::new(p.real(0.0), p.real(0.5));
        let v = coherent_oracle(&z, 40);
        assert!((v[0].re.to_f64() - (-0.125f64).exp()).abs() < 1e-15);
        assert!((v[0].re.to_f64() - 0.882497).abs() < 1e-6);
        let norm: f64 = v.iter().map(|c| c.norm_sqr().to_f64()).sum();
        assert!((norm - 1.0).abs() < 1e-25);
        let e0 = coherent_oracle(&Cplx::new(p.real(0.0), p.real(0.0)), 3);
        assert!(e0[0].re.to_f64() == 1.0 && e0[1].re.is_zero());
    }

    #[test]
    fn displacement_column_is_coherent() {
        // exp(itA^(1)) e_0 = D(t e^{iθ}) e_0
        let p = prec(30);
        let (th, t) = (p.real(0.3), p.real(0.5));
        let u = truncated_exponential(1, Scope::Full, &th, &t, 64, Method::EigTridiagonal).unwrap();
        let z = Cplx::cis(&th).scale(&t);
        let want = coherent_oracle(&z, 20);
        for (n, w) in want.iter().enumerate() {
            assert!(
                (u.matrix.get(n, 0).clone() - w).abs().to_f64() < 1e-25,
                "n = {n}"
            );
        }
    }

    #[test]
    fn verdict_rules() {
        use StabilizationVerdict::*;
        assert_eq!(
            stabilization_verdict(&[1e-3, 1e-6, 1e-10, 1e-14]),
            Stabilizes
        );
        assert_eq!(
            stabilization_verdict(&[1e-16, 3e-16, 2e-16, 2e-16]),
            Stabilizes
        );
        assert_eq!(
            stabilization_verdict(&[1.9, 1.8, 1.75, 1.71]),
            DoesNotStabilize
        );
        assert_eq!(stabilization_verdict(&[1.0, 0.4, 0.1, 0.05]), Inconclusive);
    }

    #[test]
    fn decomposition_at_zero_and_small_t() {
        let p = prec(30);
        let xi = Cplx::new(p.real(1.0), p.real(0.0));
        let r = squeeze_decomposition_check(&p.real(0.0), &xi, 8).unwrap();
        assert!(r.residual < p.tau());
        let r = squeeze_decomposition_check(&p.real(0.2), &xi, 16).unwrap();
        assert!(r.cross_terms_zero && r.residual < 1e3 * p.tau());
        assert!(squeeze_decomposition_check(&p.real(0.2), &xi, 7).is_err());
    }
}
