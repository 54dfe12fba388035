//! Growth of `‖(A^(k,i))^n e_p‖` and the resulting vector classes.
//!
//! `A^(k,i)` is unitarily equivalent, through `e_q ↦ ω^q e_q`, to the Jacobi
//! matrix `J` with zero diagonal and off-diagonal `β_q > 0`. Powers of `J`
//! applied to `e_p` have nonnegative entries, so their norms can be iterated
//! in double precision with rescaling and no cancellation. Exact norms come
//! from [`ExactRadicalVector`].

use rayon::prelude::*;
use rug::ops::Pow;
use rug::Rational;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::fock::{beta_sq, check_block, factorial_ratio, BlockIndex, ExactRadicalVector};

/// Largest power accepted by [`power_norm_sq`] unless a cap is given.
pub const DEFAULT_POWER_CAP: u32 = 512;
/// Largest power accepted by [`nested_sum_norm_sq`].
pub const NESTED_SUM_MAX_POWER: u32 = 8;
/// Log-log slope separating bounded from growing ratio sequences.
const SLOPE_CUT: f64 = 0.25;

/// `‖(A^(k,i))^n e_p‖²` by `n` exact applications of the block.
pub fn power_norm_sq(k: u32, i: u32, p: u64, n: u32) -> Result<Rational> {
    power_norm_sq_capped(k, i, p, n, DEFAULT_POWER_CAP)
}

pub fn power_norm_sq_capped(k: u32, i: u32, p: u64, n: u32, cap: u32) -> Result<Rational> {
    Ok(power_norm_rows(k, i, p, n, cap)?.pop().expect("n + 1 rows"))
}

/// `‖A^m e_p‖²` for `m = 0..=n`.
pub fn power_norm_rows(k: u32, i: u32, p: u64, n: u32, cap: u32) -> Result<Vec<Rational>> {
    if n > cap {
        return Err(Error::ResourceLimit(format!(
            "power n = {n} exceeds the exact-arithmetic cap {cap}"
        )));
    }
    let mut v = ExactRadicalVector::basis(BlockIndex::new(k, i, p)?);
    let mut rows = Vec::with_capacity(n as usize + 1);
    rows.push(v.norm_sq()?);
    for _ in 0..n {
        v = v.apply_block();
        rows.push(v.norm_sq()?);
    }
    Ok(rows)
}

/// The closed nested-sum expression for `‖A^n e_p‖²`:
///
/// ```text
/// Σ_r c_r² (i+(p+n−2r)k)!/(i+pk)!,
/// c_r = Σ_{j_1=0}^{j_0+1} Σ_{j_2=1}^{j_1+1} ⋯ Σ_{j_r=r−1}^{j_{r−1}+1} ∏_s β²_{p−r+1+j_s},
/// ```
///
/// with `j_0 = n−r−1` and `β²_q = 0` for `q ≤ 0`.
pub fn nested_sum_norm_sq(k: u32, i: u32, p: u64, n: u32) -> Result<Rational> {
    check_block(k, i)?;
    if n > NESTED_SUM_MAX_POWER {
        return Err(Error::ResourceLimit(format!(
            "nested sums are evaluated for n ≤ {NESTED_SUM_MAX_POWER}"
        )));
    }
    let (p, n) = (p as i64, i64::from(n));
    let b2 = |q: i64| {
        if q <= 0 {
            rug::Integer::new()
        } else {
            beta_sq(k, i, q as u64)
        }
    };
    fn nest(
        s: i64,
        r: i64,
        j_prev: i64,
        shift: i64,
        b2: &dyn Fn(i64) -> rug::Integer,
    ) -> rug::Integer {
        if s > r {
            return rug::Integer::from(1);
        }
        let mut acc = rug::Integer::new();
        for j in s - 1..=j_prev + 1 {
            let f = b2(shift + j);
            if f != 0 {
                acc += f * nest(s + 1, r, j, shift, b2);
            }
        }
        acc
    }
    let mut total = Rational::new();
    for r in 0..=n {
        let q = p + n - 2 * r;
        if q < 0 {
            continue;
        }
        let c = nest(1, r, n - r - 1, p - r + 1, &b2);
        let c2 = Rational::from(c.clone() * &c);
        total += c2 * factorial_ratio(k, i, p as u64, q as u64);
    }
    Ok(total)
}

/// The two-sided bound `F ≤ ‖A^n e_p‖² ≤ 2kⁿF` with `F = (i+(p+n)k)!/(i+pk)!`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub n: u32,
    pub norm_sq: String,
    pub lower_ok: bool,
    pub upper_ok: bool,
}

pub fn check_bounds(k: u32, i: u32, p: u64, n: u32) -> Result<BoundCheck> {
    let norm = power_norm_sq(k, i, p, n)?;
    Ok(bound_flags(k, i, p, n, &norm))
}

fn bound_flags(k: u32, i: u32, p: u64, n: u32, norm: &Rational) -> BoundCheck {
    let f = factorial_ratio(k, i, p, p + u64::from(n));
    let upper = Rational::from(&f * rug::Integer::from(k).pow(n)) * 2u32;
    BoundCheck {
        n,
        norm_sq: norm.to_string(),
        lower_ok: f <= *norm,
        upper_ok: *norm <= upper,
    }
}

/// Exact `‖A^n e_p‖²` for `n = 0..=n_max` with their bound flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerNormTable {
    pub k: u32,
    pub i: u32,
    pub p: u64,
    pub rows: Vec<BoundCheck>,
}

impl PowerNormTable {
    pub fn build(k: u32, i: u32, p: u64, n_max: u32) -> Result<Self> {
        let norms = power_norm_rows(k, i, p, n_max, DEFAULT_POWER_CAP)?;
        let rows = norms
            .par_iter()
            .enumerate()
            .map(|(n, v)| bound_flags(k, i, p, n as u32, v))
            .collect();
        Ok(PowerNormTable { k, i, p, rows })
    }

    pub fn all_bounds_hold(&self) -> bool {
        self.rows.iter().all(|r| r.lower_ok && r.upper_ok)
    }
}

/// `ln ‖(A^(k,i))^n e_p‖` for `n = 0..=n_max`, in double precision.
///
/// Entries are carried as logarithms; plain rescaled iteration underflows in
/// the tails, and for large `n` the lost tails feed back into the bulk.
pub fn log_power_norms(k: u32, i: u32, p: u64, n_max: usize) -> Result<Vec<f64>> {
    check_block(k, i)?;
    let p = p as usize;
    let len = p + n_max + 2;
    // lb[q] = ln β_q, lb[0] = −∞
    let lb: Vec<f64> = (0..=len as u64)
        .map(|q| {
            if q == 0 {
                f64::NEG_INFINITY
            } else {
                let base = f64::from(i) + (q - 1) as f64 * f64::from(k);
                0.5 * (1..=k).map(|j| (base + f64::from(j)).ln()).sum::<f64>()
            }
        })
        .collect();
    let mut v = vec![f64::NEG_INFINITY; len];
    v[p] = 0.0;
    let mut next = vec![f64::NEG_INFINITY; len];
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(0.0);
    for n in 1..=n_max {
        let lo = p.saturating_sub(n);
        let hi = p + n;
        let mut big = f64::NEG_INFINITY;
        for q in lo..=hi {
            let down = if q >= 1 {
                lb[q] + v[q - 1]
            } else {
                f64::NEG_INFINITY
            };
            let up = lb[q + 1] + v[q + 1];
            next[q] = log_add(down, up);
            big = big.max(next[q]);
        }
        std::mem::swap(&mut v, &mut next);
        let ss: f64 = v[lo..=hi].iter().map(|x| (2.0 * (x - big)).exp()).sum();
        out.push(big + 0.5 * ss.ln());
    }
    Ok(out)
}

fn ln_factorials(n_max: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut acc = 0.0;
    out.push(0.0);
    for j in 1..=n_max {
        acc += (j as f64).ln();
        out.push(acc);
    }
    out
}

/// Least-squares slope of `ys` against `ln x` for `x` in `xs`.
fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Trailing decade `[max(1, N/10), N]`.
fn decade(n_max: usize) -> std::ops::RangeInclusive<usize> {
    (n_max / 10).max(1)..=n_max
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesVerdict {
    Converges,
    Diverges,
    Inconclusive,
}

/// `Σ_{n≤N} ‖A^n e_p‖ tⁿ/n!` with ratio diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyticSeries {
    pub t: f64,
    pub n_max: usize,
    /// `ln(‖A^n e_p‖ tⁿ/n!)`.
    pub log_terms: Vec<f64>,
    /// Natural logarithm of the partial sums.
    pub log_partial_sums: Vec<f64>,
    /// `term_{n+1}/term_n` for `n = 0..N−1`.
    pub ratios: Vec<f64>,
    /// Slope of `ln ratio_n` against `ln n` over the last decade.
    pub ratio_growth_exponent: f64,
    /// Limit of the ratios from a fit `L + c/n` over the last decade.
    pub ratio_limit: f64,
    pub first_ratio_above_one: Option<usize>,
    /// Every ratio from the first one above 1 onwards exceeds 1.
    pub ratios_exceed_one: bool,
    pub verdict: SeriesVerdict,
}

pub fn analytic_series(k: u32, i: u32, p: u64, t: f64, n_max: usize) -> Result<AnalyticSeries> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(invalid("t must be positive and finite"));
    }
    if n_max < 10 {
        return Err(invalid("analytic series needs N ≥ 10"));
    }
    let logs = log_power_norms(k, i, p, n_max)?;
    let lf = ln_factorials(n_max);
    let log_terms: Vec<f64> = (0..=n_max)
        .map(|n| logs[n] + n as f64 * t.ln() - lf[n])
        .collect();
    let mut log_partial_sums = Vec::with_capacity(n_max + 1);
    let mut acc = f64::NEG_INFINITY;
    for lt in &log_terms {
        acc = log_add(acc, *lt);
        log_partial_sums.push(acc);
    }
    let ratios: Vec<f64> = log_terms.windows(2).map(|w| (w[1] - w[0]).exp()).collect();

    let win = decade(n_max - 1);
    let xs: Vec<f64> = win.clone().map(|n| n as f64).collect();
    let lr: Vec<f64> = win.clone().map(|n| ratios[n].ln()).collect();
    let growth = loglog_slope(&xs, &lr);
    let limit = fit_limit(&xs, &win.clone().map(|n| ratios[n]).collect::<Vec<_>>());
    let last = *ratios.last().expect("N ≥ 10");
    let first_above = ratios.iter().position(|r| *r > 1.0);
    let exceed = first_above.is_some_and(|j| ratios[j..].iter().all(|r| *r > 1.0));
    let verdict = if growth > SLOPE_CUT {
        SeriesVerdict::Diverges
    } else if growth < -SLOPE_CUT {
        if last < 1.0 {
            SeriesVerdict::Converges
        } else {
            SeriesVerdict::Inconclusive
        }
    } else if limit < 1.0 && last < 1.0 {
        SeriesVerdict::Converges
    } else if limit > 1.0 && last > 1.0 {
        SeriesVerdict::Diverges
    } else {
        SeriesVerdict::Inconclusive
    };
    Ok(AnalyticSeries {
        t,
        n_max,
        log_terms,
        log_partial_sums,
        ratios,
        ratio_growth_exponent: growth,
        ratio_limit: limit,
        first_ratio_above_one: first_above,
        ratios_exceed_one: exceed,
        verdict,
    })
}

fn log_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// Intercept `L` of the least-squares fit `y ≈ L + c/x`.
fn fit_limit(xs: &[f64], ys: &[f64]) -> f64 {
    let us: Vec<f64> = xs.iter().map(|x| 1.0 / x).collect();
    let n = us.len() as f64;
    let mu = us.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let suy: f64 = us.iter().zip(ys).map(|(u, y)| (u - mu) * (y - my)).sum();
    let suu: f64 = us.iter().map(|u| (u - mu) * (u - mu)).sum();
    my - suy / suu * mu
}

/// `Σ_{n≤N} ‖A^n e_p‖^{−1/n}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuasianalyticSeries {
    pub n_max: usize,
    /// `term_n` for `n = 1..=N` (index `n − 1`).
    pub terms: Vec<f64>,
    pub partial_sums: Vec<f64>,
    /// Every term lies below `(e/k)^{k/2} n^{−k/2}`.
    pub majorant_holds: bool,
    /// `(e/k)^{k/2} N^{1−k/2}/(k/2 − 1)`, an upper bound on `Σ_{n>N}`, for `k ≥ 3`.
    pub tail_bound: Option<f64>,
    /// Slope of `ln term_n` against `ln n` over the last decade.
    pub decade_exponent: f64,
    /// Every term lies above `(2kⁿF_n)^{−1/(2n)}`, the reciprocal root of the upper norm bound.
    pub lower_bound_holds: bool,
    /// `min n·(2kⁿF_n)^{−1/(2n)}` over the last decade.
    pub harmonic_constant: f64,
    /// `n·(2kⁿF_n)^{−1/(2n)}` does not decrease on the last decade, so the
    /// terms dominate a multiple of the harmonic series there.
    pub harmonic_nondecreasing: bool,
    pub verdict: SeriesVerdict,
}

pub fn quasianalytic_series(k: u32, i: u32, p: u64, n_max: usize) -> Result<QuasianalyticSeries> {
    if n_max < 2 {
        return Err(invalid("quasianalytic series needs N ≥ 2"));
    }
    let logs = log_power_norms(k, i, p, n_max)?;
    Ok(quasianalytic_from_logs(k, i, p, &logs))
}

fn quasianalytic_from_logs(k: u32, i: u32, p: u64, logs: &[f64]) -> QuasianalyticSeries {
    let n_max = logs.len() - 1;
    let terms: Vec<f64> = (1..=n_max).map(|n| (-logs[n] / n as f64).exp()).collect();
    let mut acc = 0.0;
    let partial_sums = terms
        .iter()
        .map(|t| {
            acc += t;
            acc
        })
        .collect();
    let kf = f64::from(k);
    let s = kf / 2.0;
    let c = (std::f64::consts::E / kf).powf(s);
    // relative slack for the double-precision log norms
    let slack = 1e-12;
    let majorant_holds = terms
        .iter()
        .enumerate()
        .all(|(j, t)| *t <= c * ((j + 1) as f64).powf(-s) * (1.0 + slack));

    // ℓ_n = (2kⁿF_n)^{−1/(2n)} ≤ term_n, F_n = (i+(p+n)k)!/(i+pk)!
    let mut ln_f = 0.0;
    let lower: Vec<f64> = (1..=n_max)
        .map(|n| {
            let base = f64::from(i) + (p + n as u64 - 1) as f64 * kf;
            ln_f += (1..=k).map(|j| (base + f64::from(j)).ln()).sum::<f64>();
            (-(2f64.ln() + n as f64 * kf.ln() + ln_f) / (2.0 * n as f64)).exp()
        })
        .collect();
    let lower_bound_holds = terms
        .iter()
        .zip(&lower)
        .all(|(t, l)| *t >= l * (1.0 - slack));
    let tail_bound = (k >= 3).then(|| c * (n_max as f64).powf(1.0 - s) / (s - 1.0));

    let win = decade(n_max);
    let xs: Vec<f64> = win.clone().map(|n| n as f64).collect();
    let ys: Vec<f64> = win.clone().map(|n| terms[n - 1].ln()).collect();
    let decade_exponent = loglog_slope(&xs, &ys);
    let harmonic_constant = win
        .clone()
        .map(|n| n as f64 * lower[n - 1])
        .fold(f64::INFINITY, f64::min);
    let harmonic_nondecreasing = win
        .collect::<Vec<_>>()
        .windows(2)
        .all(|w| w[1] as f64 * lower[w[1] - 1] >= w[0] as f64 * lower[w[0] - 1]);
    let verdict = if k >= 3 && majorant_holds {
        SeriesVerdict::Converges
    } else if k <= 2
        && (decade_exponent >= -1.0
            || (lower_bound_holds && harmonic_nondecreasing && harmonic_constant > 0.0))
    {
        SeriesVerdict::Diverges
    } else {
        SeriesVerdict::Inconclusive
    };
    QuasianalyticSeries {
        n_max,
        terms,
        partial_sums,
        majorant_holds,
        lower_bound_holds,
        tail_bound,
        decade_exponent,
        harmonic_constant,
        harmonic_nondecreasing,
        verdict,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "kebab-case")]
pub enum Classification {
    Bounded,
    Entire,
    Analytic {
        /// Bracket implied by the two-sided norm bound.
        radius_lower: f64,
        radius_upper: f64,
        /// `1/lim s_n`, reported but not asserted.
        radius_estimate: f64,
    },
    QuasianalyticWitnessed,
    NotQuasianalyticWitnessed,
}

/// Class of `e_p` with the evidence used.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VectorClass {
    pub k: u32,
    pub i: u32,
    pub p: u64,
    pub classification: Classification,
    /// Slope of `ln s_n`, `s_n = ‖A^{n+1}e_p‖/((n+1)‖A^n e_p‖)`, over the last decade.
    pub ratio_growth_exponent: f64,
    /// `ln‖A^N e_p‖/N − ln‖A^{N/2} e_p‖/(N/2)`; positive means `‖Aⁿe_p‖^{1/n}` still grows.
    pub root_growth: f64,
    pub quasianalytic: QuasianalyticSeries,
}

/// Places `e_p` in the chain bounded ⊂ entire ⊂ analytic ⊂ quasianalytic.
///
/// The radius of `Σ ‖Aⁿe_p‖ tⁿ/n!` is `1/lim s_n`. When `s_n` decays the
/// vector is entire, when it levels off the vector is analytic, and when it
/// grows the quasianalytic series decides.
pub fn classify_vector(k: u32, i: u32, p: u64, n_max: usize) -> Result<VectorClass> {
    if n_max < 20 {
        return Err(invalid("classification needs N ≥ 20"));
    }
    let logs = log_power_norms(k, i, p, n_max)?;
    let win = decade(n_max - 1);
    let xs: Vec<f64> = win.clone().map(|n| n as f64).collect();
    let s: Vec<f64> = win
        .clone()
        .map(|n| (logs[n + 1] - logs[n]).exp() / (n + 1) as f64)
        .collect();
    let growth = loglog_slope(&xs, &s.iter().map(|v| v.ln()).collect::<Vec<_>>());
    let half = n_max / 2;
    let root_growth = logs[n_max] / n_max as f64 - logs[half] / half as f64;
    let quasianalytic = quasianalytic_from_logs(k, i, p, &logs);

    let classification = if root_growth <= 0.0 {
        Classification::Bounded
    } else if growth < -SLOPE_CUT {
        Classification::Entire
    } else if growth.abs() <= SLOPE_CUT {
        let (lo, hi) = radius_bracket(k);
        Classification::Analytic {
            radius_lower: lo,
            radius_upper: hi,
            radius_estimate: 1.0 / fit_limit(&xs, &s),
        }
    } else {
        match quasianalytic.verdict {
            SeriesVerdict::Converges => Classification::NotQuasianalyticWitnessed,
            SeriesVerdict::Diverges => Classification::QuasianalyticWitnessed,
            SeriesVerdict::Inconclusive => {
                return Err(Error::Inconclusive(format!(
                    "quasianalytic test undecided for k = {k} at N = {n_max}"
                )))
            }
        }
    };
    Ok(VectorClass {
        k,
        i,
        p,
        classification,
        ratio_growth_exponent: growth,
        root_growth,
        quasianalytic,
    })
}

/// Radius bracket from `F ≤ ‖Aⁿe_p‖² ≤ 2kⁿF`. For `k = 2` it is
/// `[1/(2√2), 1/2]`; other orders get the trivial bracket.
fn radius_bracket(k: u32) -> (f64, f64) {
    if k == 2 {
        (1.0 / (2.0 * 2f64.sqrt()), 0.5)
    } else {
        (0.0, f64::INFINITY)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_values() {
        assert_eq!(power_norm_sq(1, 0, 0, 1).unwrap(), 1);
        assert_eq!(power_norm_sq(1, 0, 0, 2).unwrap(), 3);
        assert_eq!(power_norm_sq(2, 0, 0, 1).unwrap(), 2);
        assert_eq!(power_norm_sq(3, 0, 0, 1).unwrap(), 6);
    }

    #[test]
    fn nested_sum_matches_iteration() {
        for k in 1..=4 {
            for i in 0..k {
                for p in 0..=2 {
                    for n in 0..=NESTED_SUM_MAX_POWER {
                        assert_eq!(
                            nested_sum_norm_sq(k, i, p, n).unwrap(),
                            power_norm_sq(k, i, p, n).unwrap(),
                            "k={k} i={i} p={p} n={n}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn bound_examples() {
        let b = check_bounds(1, 0, 0, 2).unwrap();
        assert!(b.lower_ok && b.upper_ok && b.norm_sq == "3");
        let b = check_bounds(3, 0, 0, 1).unwrap();
        assert!(b.lower_ok && b.upper_ok && b.norm_sq == "6");
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            power_norm_sq_capped(2, 0, 0, 11, 10),
            Err(Error::ResourceLimit(_))
        ));
        assert!(nested_sum_norm_sq(2, 0, 0, 9).is_err());
    }

    #[test]
    fn float_log_norms_match_exact() {
        for (k, i, p) in [(1, 0, 0), (2, 1, 3), (3, 2, 1), (5, 0, 0)] {
            let logs = log_power_norms(k, i, p, 40).unwrap();
            let exact = power_norm_rows(k, i, p, 40, 40).unwrap();
            for n in 0..=40 {
                let e = 0.5 * rug::Float::with_val(200, &exact[n]).ln().to_f64();
                assert!(
                    (logs[n] - e).abs() <= 1e-12 * e.abs().max(1.0),
                    "k={k} n={n}"
                );
            }
        }
    }

    #[test]
    fn quasianalytic_first_term() {
        let q = quasianalytic_series(3, 0, 0, 50).unwrap();
        assert!((q.terms[0] - 6f64.powf(-0.5)).abs() < 1e-15);
    }

    #[test]
    fn upper_bound_fails_for_first_order() {
        // ⟨0|(a + a†)⁶|0⟩ = 15 > 2·3!
        let b = check_bounds(1, 0, 0, 3).unwrap();
        assert_eq!(b.norm_sq, "15");
        assert!(b.lower_ok && !b.upper_ok);
        assert!(check_bounds(2, 1, 3, 20).unwrap().upper_ok);
    }

    #[test]
    fn squeeze_ratio_tends_to_eight_over_pi() {
        // e_0 has spectral density ∝ |Γ(1/4 + ix/4)|², so ‖Jⁿe_0‖ ~ n!(8/π)ⁿ
        let logs = log_power_norms(2, 0, 0, 6000).unwrap();
        let s = (logs[6000] - logs[5999]).exp() / 6000.0;
        assert!((s - 8.0 / std::f64::consts::PI).abs() < 1e-3, "{s}");
    }

    #[test]
    fn taxonomy() {
        assert_eq!(
            analytic_series(1, 0, 0, 10.0, 200).unwrap().verdict,
            SeriesVerdict::Converges
        );
        assert_eq!(
            analytic_series(2, 0, 0, 0.3, 400).unwrap().verdict,
            SeriesVerdict::Converges
        );
        assert_eq!(
            analytic_series(2, 0, 0, 0.6, 400).unwrap().verdict,
            SeriesVerdict::Diverges
        );
        let a = analytic_series(3, 0, 0, 0.01, 1000).unwrap();
        assert_eq!(a.verdict, SeriesVerdict::Diverges);
        assert!(a.ratios_exceed_one);
        assert!(matches!(
            classify_vector(1, 0, 0, 2000).unwrap().classification,
            Classification::Entire
        ));
        let Classification::Analytic {
            radius_lower,
            radius_upper,
            radius_estimate,
        } = classify_vector(2, 0, 0, 2000).unwrap().classification
        else {
            panic!("expected analytic")
        };
        assert!(radius_lower <= radius_estimate && radius_estimate <= radius_upper);
        assert!(matches!(
            classify_vector(4, 1, 0, 2000).unwrap().classification,
            Classification::NotQuasianalyticWitnessed
        ));
    }
}
