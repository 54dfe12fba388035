use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{flip_branch, solve_recurrence, Branch, DeficiencySequence, Gauge};
use crate::arith::{Cplx, PrecisionConfig, Real, Scalar};
use crate::error::{invalid, Error, Result};
use crate::fock::beta_sq;
use crate::orthopoly::{hermite_normalized_seq, meixner_pollaczek_seq};

/// Partial sum above which growth counts as divergence.
pub const DIVERGENCE_THRESHOLD: f64 = 1e6;
/// Decade-fit exponent at or above which `Σ |entry_p|²` is declared divergent.
pub const DIVERGENT_EXPONENT: f64 = -1.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleMatch {
    pub family: String,
    /// Evaluation point, as `(re, im)`.
    pub point: (f64, f64),
    pub max_rel_error: f64,
    pub tolerance: f64,
    pub matched: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DivergenceWitness {
    pub partial_sum: f64,
    pub threshold_exceeded: bool,
    /// First position of the trailing window on which growth is checked.
    pub window_start: usize,
    pub strictly_increasing: bool,
    /// Least-squares slope of `ln |entry_p|²` against `ln p` over the last decade.
    pub decade_exponent: f64,
    pub oracle: OracleMatch,
}

/// The `m = 2` instance of the Cauchy estimate
/// `|d_{p+2} − d_p| ≤ |d_2 − d_0| Σ_{r=p}^{p+2} α_r⋯α_0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CauchyChainCheck {
    pub holds: bool,
    pub first_violation: Option<usize>,
    pub lhs_at_violation: Option<f64>,
    pub rhs_at_violation: Option<f64>,
    pub violations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceCertificate {
    pub partial_sum: f64,
    /// Rigorous bound on `Σ_{p > P} |entry_p|²`.
    pub tail_bound: f64,
    pub anchor: usize,
    /// `max(|d_P|, |d_{P−1}|)`.
    pub anchor_max: f64,
    /// `Σ_{r ≥ 0} α_r⋯α_0 = Σ_{r ≥ 0} √(i!/(kr+k+i)!)`.
    pub alpha_series: f64,
    /// `Σ_{r ≥ P} α_r⋯α_0`.
    pub alpha_series_tail: f64,
    pub cauchy_chain: CauchyChainCheck,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Summability {
    Divergent(DivergenceWitness),
    Convergent(ConvergenceCertificate),
}

impl Summability {
    pub fn is_convergent(&self) -> bool {
        matches!(self, Summability::Convergent(_))
    }
}

/// Decides whether `Σ |entry_p|²` converges.
///
/// For `k ≥ 3` convergence is certified by a two-step majorant. Write
/// `ρ_q = β_q/β_{q+1}` and `ε_q = 1/β_{q+1}`; then `|d_{q+1}| ≤ ρ_q|d_{q−1}| + ε_q|d_q|`
/// and `M_q = max(|d_q|, |d_{q−1}|)` obeys `M_{q+2} ≤ γ_q M_q` with
/// `γ_q ≤ (1 − 1/(q+3))^{k/2} + (qk)^{−k/2}`. Summing the logarithms gives a
/// power-law envelope for the tail and hence an explicit bound on
/// `Σ_{p>P} d_p²`. The α-series and the α-product Cauchy chain are
/// evaluated alongside for reporting.
///
/// For `k ≤ 2` divergence needs growth of the partial sums on the last decade,
/// either a large sum or a decade-fit exponent of at least −1, and agreement
/// with the matching polynomial family.
pub fn classify_summability(seq: &DeficiencySequence) -> Result<Summability> {
    let p = seq.p_max();
    if p < 2 {
        return Err(invalid("classification needs P ≥ 2"));
    }
    if seq.k >= 3 {
        convergence_certificate(seq).map(Summability::Convergent)
    } else {
        divergence_witness(seq).map(Summability::Divergent)
    }
}

fn convergence_certificate(seq: &DeficiencySequence) -> Result<ConvergenceCertificate> {
    let (k, i) = (seq.k, seq.i);
    let q = seq.p_max();
    let s = f64::from(k) / 2.0;
    let qf = q as f64;
    let kf = f64::from(k);
    if (qf * kf).powf(-s) * (qf + 3.0 + s) > s {
        return Err(Error::Inconclusive(format!(
            "majorant precondition fails at P = {q}; raise P"
        )));
    }
    let mq = seq.entries[q]
        .abs()
        .max_of(seq.entries[q - 1].abs())
        .to_f64();
    let c_q = ((qf + 3.0) / (qf + 2.0)).powf(s);
    let e = c_q * kf.powf(-s) * (qf.powf(-s) + qf.powf(1.0 - s) / (2.0 * (s - 1.0)));
    let tail = mq * mq * (2.0 * e).exp() * (qf + 3.0) / (s - 1.0);
    // the bound is computed in double precision; pad it by a relative margin
    let tail = tail * (1.0 + 1e-12);

    let (alpha_series, alpha_series_tail) = alpha_series(k, i, q, &seq.entries[0].re);
    Ok(ConvergenceCertificate {
        partial_sum: seq.partial_sums[q].to_f64(),
        tail_bound: tail,
        anchor: q,
        anchor_max: mq,
        alpha_series,
        alpha_series_tail,
        cauchy_chain: cauchy_chain_check(seq),
    })
}

/// Products `α_r⋯α_0 = 1/(β_1⋯β_{r+1})` for `r = 0..=r_max`.
pub(super) fn alpha_products(k: u32, i: u32, r_max: usize, like: &Real) -> Vec<Real> {
    let mut out = Vec::with_capacity(r_max + 1);
    let mut acc = like.one_like();
    for r in 0..=r_max {
        acc /= like.lift_integer(&beta_sq(k, i, r as u64 + 1)).sqrt();
        out.push(acc.clone());
    }
    out
}

/// `(Σ_{r≥0}, Σ_{r≥from})` of `α_r⋯α_0`, summed until the terms stagnate.
pub fn alpha_series(k: u32, i: u32, from: usize, like: &Real) -> (f64, f64) {
    let eps = like.epsilon();
    let mut acc = like.one_like();
    let mut total = like.zero_like();
    let mut tail = like.zero_like();
    let mut r = 0usize;
    loop {
        acc /= like.lift_integer(&beta_sq(k, i, r as u64 + 1)).sqrt();
        total += &acc;
        if r >= from {
            tail += &acc;
        }
        if r >= from && acc < eps.clone() * &tail {
            break;
        }
        r += 1;
    }
    (total.to_f64(), tail.to_f64())
}

fn cauchy_chain_check(seq: &DeficiencySequence) -> CauchyChainCheck {
    let d = seq.real_entries();
    let p_max = seq.p_max();
    let alpha = alpha_products(seq.k, seq.i, p_max, &d[0]);
    let scale = (d[2].clone() - &d[0]).abs();
    let mut first = None;
    let mut violations = 0;
    for p in 0..=p_max - 2 {
        let lhs = (d[p + 2].clone() - &d[p]).abs();
        let mut sum = d[0].zero_like();
        for a in &alpha[p..=p + 2] {
            sum += a;
        }
        let rhs = scale.clone() * &sum;
        if lhs > rhs {
            violations += 1;
            if first.is_none() {
                first = Some((p, lhs.to_f64(), rhs.to_f64()));
            }
        }
    }
    CauchyChainCheck {
        holds: first.is_none(),
        first_violation: first.map(|f| f.0),
        lhs_at_violation: first.map(|f| f.1),
        rhs_at_violation: first.map(|f| f.2),
        violations,
    }
}

fn divergence_witness(seq: &DeficiencySequence) -> Result<DivergenceWitness> {
    let p = seq.p_max();
    let start = (p / 10).max(1);
    let strictly_increasing = seq.partial_sums[start..].windows(2).all(|w| w[1] > w[0]);
    let partial_sum = seq.partial_sums[p].to_f64();
    let decade_exponent = decade_fit(seq, start);
    let oracle = polynomial_oracle(seq)?;
    let threshold_exceeded = partial_sum > DIVERGENCE_THRESHOLD;
    let witness = DivergenceWitness {
        partial_sum,
        threshold_exceeded,
        window_start: start,
        strictly_increasing,
        decade_exponent,
        oracle,
    };
    let growth = threshold_exceeded || decade_exponent >= DIVERGENT_EXPONENT;
    if strictly_increasing && growth && witness.oracle.matched {
        Ok(witness)
    } else {
        Err(Error::Inconclusive(format!(
            "no divergence witness at P = {p}: increasing = {strictly_increasing}, sum = {partial_sum:e}, exponent = {decade_exponent:.4}, oracle = {}",
            witness.oracle.matched
        )))
    }
}

/// Least-squares slope of `ln |entry_p|²` against `ln p` on `[start, P]`.
fn decade_fit(seq: &DeficiencySequence, start: usize) -> f64 {
    let pts: Vec<(f64, f64)> = (start..=seq.p_max())
        .map(|p| {
            let v = seq.entries[p].norm_sqr().ln().to_f64();
            ((p as f64).ln(), v)
        })
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

/// Compares a `k ≤ 2` sequence with the polynomial family it should equal:
/// normalized Hermite at `±i/√2` for `k = 1`, and `p^(λ)_n(±i/4)/p^(λ)_0` with
/// `λ = 1/4, 3/4` for the blocks of `k = 2`. The sign of the point is fixed by
/// the first-degree value and then checked at every position.
pub fn polynomial_oracle(seq: &DeficiencySequence) -> Result<OracleMatch> {
    let n = seq.p_max();
    let like = seq.entries[0].re.clone();
    let tolerance = 10.0 * seq.tau();
    let candidates: Vec<(String, (f64, f64), Vec<Cplx<Real>>)> = match (seq.k, seq.gauge) {
        (1, Gauge::K1G) => {
            let h = like.lift(0.5).sqrt();
            [1.0, -1.0]
                .iter()
                .map(|sg| {
                    let x = Cplx::new(like.zero_like(), h.clone() * &like.lift(*sg));
                    (
                        "hermite-normalized".to_string(),
                        (0.0, sg * 0.5f64.sqrt()),
                        hermite_normalized_seq(n, &x),
                    )
                })
                .collect()
        }
        (2, Gauge::K2C) => {
            let lambda = like.lift(if seq.i == 0 { 0.25 } else { 0.75 });
            let mut out = Vec::new();
            for sg in [1.0, -1.0] {
                let x = Cplx::new(like.zero_like(), like.lift(0.25 * sg));
                let vals = meixner_pollaczek_seq(&lambda, n, &x, true)?;
                let p0 = vals[0].clone();
                let scaled = vals.iter().map(|v| v.div(&p0)).collect();
                out.push((
                    format!("meixner-pollaczek-normalized(λ={})", lambda.to_f64()),
                    (0.0, 0.25 * sg),
                    scaled,
                ));
            }
            out
        }
        _ => {
            return Err(invalid(
                "polynomial oracle exists only for k = 1, 2 in the reduced gauge",
            ))
        }
    };
    let rel = |a: &Cplx<Real>, b: &Cplx<Real>| -> f64 {
        let d = (a.clone() - b).abs();
        let s = b.abs();
        if s.is_zero() {
            d.to_f64()
        } else {
            (d / s).to_f64()
        }
    };
    let (family, point, values) = candidates
        .into_iter()
        .min_by(|a, b| {
            rel(&seq.entries[1], &a.2[1])
                .partial_cmp(&rel(&seq.entries[1], &b.2[1]))
                .unwrap_or(std::cmp::Ordering::Equal)
        })
        .expect("two candidates");
    let max_rel_error = seq
        .entries
        .iter()
        .zip(&values)
        .map(|(a, b)| rel(a, b))
        .fold(0.0, f64::max);
    Ok(OracleMatch {
        family,
        point,
        max_rel_error,
        tolerance,
        matched: max_rel_error <= tolerance,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockVerdict {
    pub i: u32,
    pub summable: bool,
    pub partial_sum_at_p: f64,
    pub tail_bound: Option<f64>,
    pub p: usize,
    pub plus: Summability,
    pub minus: Summability,
    pub digits_lost: f64,
    pub digits_used: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeficiencyReport {
    pub k: u32,
    pub blocks: Vec<BlockVerdict>,
    pub indices: (usize, usize),
    pub essentially_selfadjoint: bool,
}

/// Solves and classifies every block of `A^(k)` for both signs.
///
/// The `−` sequence is obtained from the `+` one by the alternation law and
/// classified independently; the two verdicts must agree.
pub fn deficiency_indices(
    k: u32,
    p_max: usize,
    prec: &PrecisionConfig,
) -> Result<DeficiencyReport> {
    if k == 0 {
        return Err(invalid("order k must be at least 1"));
    }
    let blocks: Vec<Result<BlockVerdict>> = (0..k)
        .into_par_iter()
        .map(|i| {
            let plus = solve_recurrence(k, i, Branch::Plus, p_max, prec)?;
            let minus = flip_branch(&plus);
            let vp = classify_summability(&plus)?;
            let vm = classify_summability(&minus)?;
            if vp.is_convergent() != vm.is_convergent() {
                return Err(Error::Numerical(format!(
                    "branches of block {i} disagree on summability"
                )));
            }
            let tail_bound = match &vp {
                Summability::Convergent(c) => Some(c.tail_bound),
                Summability::Divergent(_) => None,
            };
            Ok(BlockVerdict {
                i,
                summable: vp.is_convergent(),
                partial_sum_at_p: plus.partial_sums[p_max].to_f64(),
                tail_bound,
                p: p_max,
                plus: vp,
                minus: vm,
                digits_lost: plus.digits_lost,
                digits_used: plus.precision.digits,
            })
        })
        .collect();
    let blocks = blocks.into_iter().collect::<Result<Vec<_>>>()?;
    let n = blocks.iter().filter(|b| b.summable).count();
    Ok(DeficiencyReport {
        k,
        blocks,
        indices: (n, n),
        essentially_selfadjoint: n == 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prec() -> PrecisionConfig {
        PrecisionConfig::default()
    }

    #[test]
    fn alpha_series_for_first_cubic_block() {
        let like = prec().real(0.0);
        let (total, tail) = alpha_series(3, 0, 2, &like);
        // independent f64 summation of 1/√((3r+3)!)
        let mut fact = 1.0f64;
        let mut want = 0.0;
        for r in 0..30u32 {
            for j in 1..=3 {
                fact *= f64::from(3 * r + j);
            }
            want += 1.0 / fact.sqrt();
        }
        assert!((total - want).abs() < 1e-15, "{total} vs {want}");
        assert!((total - 0.447_222_708).abs() < 1e-9);
        assert!((tail - (want - 1.0 / 6f64.sqrt() - 1.0 / 720f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn cubic_blocks_are_summable() {
        for i in 0..3 {
            let s = solve_recurrence(3, i, Branch::Plus, 200, &prec()).unwrap();
            let v = classify_summability(&s).unwrap();
            let Summability::Convergent(c) = v else {
                panic!("expected convergence")
            };
            assert!(c.tail_bound.is_finite() && c.tail_bound > 0.0);
        }
    }

    #[test]
    fn alpha_product_cauchy_chain_is_violated() {
        // |d_{p+2} − d_p| decays like a power of p, the α-products factorially
        let s = solve_recurrence(3, 0, Branch::Plus, 20, &prec()).unwrap();
        let c = cauchy_chain_check(&s);
        assert!(!c.holds);
        let d = s.real_entries();
        let gap = (d[7].clone() - &d[5]).to_f64();
        assert!(gap < -0.02 && gap > -0.05, "{gap}");
    }

    #[test]
    fn hermite_block_diverges() {
        for p in [100, 1000] {
            let s = solve_recurrence(1, 0, Branch::Plus, p, &prec()).unwrap();
            let Summability::Divergent(w) = classify_summability(&s).unwrap() else {
                panic!("expected divergence")
            };
            assert!(w.threshold_exceeded && w.strictly_increasing && w.oracle.matched);
            // + sign pairs with −i/√2
            assert!(w.oracle.point.1 < 0.0);
        }
    }

    #[test]
    fn squeeze_blocks_diverge_by_exponent() {
        for i in 0..2 {
            let s = solve_recurrence(2, i, Branch::Minus, 500, &prec()).unwrap();
            let Summability::Divergent(w) = classify_summability(&s).unwrap() else {
                panic!("expected divergence")
            };
            assert!(!w.threshold_exceeded);
            assert!(
                (w.decade_exponent + 0.5).abs() < 0.05,
                "{}",
                w.decade_exponent
            );
            assert!(w.oracle.matched);
        }
    }

    #[test]
    fn indices_for_small_orders() {
        assert_eq!(deficiency_indices(1, 200, &prec()).unwrap().indices, (0, 0));
        let r = deficiency_indices(3, 200, &prec()).unwrap();
        assert_eq!(r.indices, (3, 3));
        assert!(!r.essentially_selfadjoint);
    }
}
