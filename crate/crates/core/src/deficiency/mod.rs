//! Deficiency vectors of the Jacobi blocks.
//!
//! A vector `f = Σ f_p e_p` is orthogonal to the range of `A^(k,i) ± i` iff
//! its coefficients solve a three-term recurrence with `f_{−1} = 0`. Up to
//! a unimodular diagonal change of variables that recurrence is
//!
//! ```text
//! β_{p+1} d_{p+1} = β_p d_{p−1} ± d_p,
//! ```
//!
//! so every block has at most one deficiency vector per sign, and the block's
//! deficiency indices are `(1, 1)` exactly when `Σ d_p²` converges.

mod classify;
mod inequalities;
mod structure;

pub use classify::{
    alpha_series, classify_summability, deficiency_indices, polynomial_oracle, BlockVerdict,
    CauchyChainCheck, ConvergenceCertificate, DeficiencyReport, DivergenceWitness, OracleMatch,
    Summability, DIVERGENCE_THRESHOLD, DIVERGENT_EXPONENT,
};
pub use inequalities::{
    verify_ladder_inequalities, Inequality, InequalityFailure, InequalityTally,
    LadderInequalityReport,
};
pub use structure::{verify_structure, CheckOutcome, StructureReport};

use serde::{Deserialize, Serialize};

use crate::arith::{Cplx, PrecisionConfig, Real, Scalar};
use crate::error::{invalid, Error, Result};
use crate::fock::{beta_sq, check_block};

/// Sign of `A^(k,i) ± i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> i64 {
        match self {
            Branch::Plus => 1,
            Branch::Minus => -1,
        }
    }

    pub fn both() -> [Branch; 2] {
        [Branch::Plus, Branch::Minus]
    }
}

/// Variables in which the sequence is stored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Gauge {
    /// The Fourier coefficients `f_p` themselves, for a concrete `θ`.
    #[serde(rename = "raw-f")]
    RawF,
    /// `g_p = e^{ipθ} f_p` (k = 1), comparable with normalized Hermite values.
    #[serde(rename = "k1-g")]
    K1G,
    /// `c_p = i^p e^{ipθ} f_p` (k = 2), comparable with Meixner–Pollaczek values.
    #[serde(rename = "k2-c")]
    K2C,
    /// `d_p = e^{ipθ} f_p` (k ≥ 3), real and of one sign for the `+` branch.
    #[serde(rename = "k3-d")]
    D,
}

impl Gauge {
    pub fn for_order(k: u32) -> Self {
        match k {
            1 => Gauge::K1G,
            2 => Gauge::K2C,
            _ => Gauge::D,
        }
    }
}

/// Solution of the deficiency recurrence for one block and sign.
#[derive(Debug, Clone)]
pub struct DeficiencySequence {
    pub k: u32,
    pub i: u32,
    pub branch: Branch,
    pub gauge: Gauge,
    /// Phase used for the raw gauge; zero otherwise.
    pub theta: f64,
    pub entries: Vec<Cplx<Real>>,
    /// `Σ_{q ≤ p} |entry_q|²`.
    pub partial_sums: Vec<Real>,
    pub normalization: Cplx<Real>,
    /// Precision actually used, after any automatic doubling.
    pub precision: PrecisionConfig,
    /// Worst accumulated cancellation over the run, in decimal digits.
    pub digits_lost: f64,
}

impl DeficiencySequence {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn p_max(&self) -> usize {
        self.entries.len() - 1
    }

    /// Entries as real numbers; only meaningful for gauges with real entries.
    pub fn real_entries(&self) -> Vec<Real> {
        self.entries.iter().map(|c| c.re.clone()).collect()
    }

    pub fn tau(&self) -> f64 {
        self.precision.tau()
    }
}

/// Solves the recurrence in the gauge natural for `k`, with `entry_0 = 1`.
pub fn solve_recurrence(
    k: u32,
    i: u32,
    branch: Branch,
    p_max: usize,
    prec: &PrecisionConfig,
) -> Result<DeficiencySequence> {
    solve_with_initial(k, i, branch, p_max, prec, 1.0)
}

/// As [`solve_recurrence`] with arbitrary real `entry_0`.
pub fn solve_with_initial(
    k: u32,
    i: u32,
    branch: Branch,
    p_max: usize,
    prec: &PrecisionConfig,
    entry0: f64,
) -> Result<DeficiencySequence> {
    run_with_doubling(prec, |cfg| {
        solve_once(k, i, branch, p_max, cfg, Gauge::for_order(k), 0.0, entry0)
    })
}

/// Solves for the raw coefficients `f_p` at phase `θ`:
/// `β_{p+1} f_{p+1} = e^{−iθ}(β_p e^{−iθ} f_{p−1} ± f_p)`.
pub fn solve_raw(
    k: u32,
    i: u32,
    branch: Branch,
    theta: f64,
    p_max: usize,
    prec: &PrecisionConfig,
) -> Result<DeficiencySequence> {
    if !theta.is_finite() {
        return Err(invalid("phase θ must be finite"));
    }
    run_with_doubling(prec, |cfg| {
        solve_once(k, i, branch, p_max, cfg, Gauge::RawF, theta, 1.0)
    })
}

fn run_with_doubling(
    prec: &PrecisionConfig,
    solve: impl Fn(&PrecisionConfig) -> Result<DeficiencySequence>,
) -> Result<DeficiencySequence> {
    let first = solve(prec)?;
    if first.digits_lost <= f64::from(prec.guard) {
        return Ok(first);
    }
    let doubled = prec.doubled();
    let second = solve(&doubled)?;
    if second.digits_lost <= f64::from(doubled.digits - prec.digits + prec.guard) {
        return Ok(second);
    }
    Err(Error::PrecisionExhausted {
        position: second.p_max(),
        estimate: 10f64.powf(second.digits_lost - f64::from(doubled.digits)),
        tolerance: prec.tau(),
    })
}

#[allow(clippy::too_many_arguments)]
fn solve_once(
    k: u32,
    i: u32,
    branch: Branch,
    p_max: usize,
    prec: &PrecisionConfig,
    gauge: Gauge,
    theta: f64,
    entry0: f64,
) -> Result<DeficiencySequence> {
    check_block(k, i)?;
    if p_max < 1 {
        return Err(invalid("need at least positions 0 and 1"));
    }
    let like = prec.real(0.0);
    let sign = like.lift_int(branch.sign());
    let one = Cplx::real(like.one_like());
    let zero = Cplx::zero_like(&like);

    // entry_{p+1} = (a · entry_{p−1} + b · entry_p) / β_{p+1}
    let (a_unit, b_unit) = match gauge {
        Gauge::K1G | Gauge::D => (one.clone(), Cplx::real(sign.clone())),
        Gauge::K2C => (-one.clone(), Cplx::new(like.zero_like(), sign.clone())),
        Gauge::RawF => {
            let th = like.lift(theta);
            let em = Cplx::cis(&(-th));
            (em.clone() * &em, em.scale(&sign))
        }
    };

    let mut entries = Vec::with_capacity(p_max + 1);
    entries.push(Cplx::real(like.lift(entry0)));
    let mut prev = zero;
    let mut beta_prev = like.zero_like();
    let mut lost = 0.0f64;
    let mut worst = 0.0f64;
    for p in 0..p_max {
        let cur = entries[p].clone();
        let t1 = (a_unit.clone() * &prev).scale(&beta_prev);
        let t2 = b_unit.clone() * &cur;
        let mag = t1.abs() + &t2.abs();
        let sum = t1 + &t2;
        let sa = sum.abs();
        if !mag.is_zero() {
            if sa.is_zero() {
                lost += f64::from(prec.digits);
            } else {
                lost += (mag / &sa).to_f64().log10().max(0.0);
            }
        }
        worst = worst.max(lost);
        let beta_next = like.lift_integer(&beta_sq(k, i, p as u64 + 1)).sqrt();
        let next = sum.div_real(&beta_next);
        prev = cur;
        beta_prev = beta_next;
        entries.push(next);
    }
    let mut acc = like.zero_like();
    let partial_sums = entries
        .iter()
        .map(|e| {
            acc += e.norm_sqr();
            acc.clone()
        })
        .collect();
    Ok(DeficiencySequence {
        k,
        i,
        branch,
        gauge,
        theta: if gauge == Gauge::RawF { theta } else { 0.0 },
        normalization: entries[0].clone(),
        entries,
        partial_sums,
        precision: *prec,
        digits_lost: worst,
    })
}

/// Second-branch sequence obtained from the first by `d⁻_p = (−1)^p d⁺_p`.
pub fn flip_branch(seq: &DeficiencySequence) -> DeficiencySequence {
    let mut out = seq.clone();
    out.branch = match seq.branch {
        Branch::Plus => Branch::Minus,
        Branch::Minus => Branch::Plus,
    };
    for (p, e) in out.entries.iter_mut().enumerate() {
        if p % 2 == 1 {
            *e = -e.clone();
        }
    }
    out
}

/// `|f_p|` at phase `θ` must agree with the reduced gauge; this is the
/// largest relative discrepancy.
pub fn gauge_discrepancy(reduced: &DeficiencySequence, raw: &DeficiencySequence) -> f64 {
    reduced
        .entries
        .iter()
        .zip(&raw.entries)
        .map(|(a, b)| {
            let (x, y) = (a.abs(), b.abs());
            let scale = x.clone().max_of(y.clone());
            if scale.is_zero() {
                0.0
            } else {
                ((x - y).abs() / scale).to_f64()
            }
        })
        .fold(0.0, f64::max)
}
