use rug::ops::Pow;
use rug::Rational;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::fock::beta_sq;

/// Entries kept per failure list; counts are always complete.
const MAX_LISTED: usize = 64;

/// Which inequality a failure refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Inequality {
    /// `β_p/β_{p+1} + 1/β_{p+1} − 1 < 0`.
    RatioSum,
    /// `((kp+i)/(kp+1+i))^{k/2} + (kp+1+i)^{−k/2} − 1 < 0`.
    RatioSumMajorant,
    /// `β_{p−1}/β_p − β_p/β_{p+1} < 0`.
    RatioMonotone,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityFailure {
    pub inequality: Inequality,
    pub k: u32,
    pub i: u32,
    pub p: u64,
    /// Left-hand side in double precision; the verdict itself is exact.
    pub lhs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityTally {
    pub checked: usize,
    pub violations: usize,
    /// Orders `k` with at least one violation.
    pub violated_orders: Vec<u32>,
    pub failures: Vec<InequalityFailure>,
}

impl InequalityTally {
    fn new() -> Self {
        InequalityTally {
            checked: 0,
            violations: 0,
            violated_orders: Vec::new(),
            failures: Vec::new(),
        }
    }

    fn record(&mut self, holds: bool, f: impl FnOnce() -> InequalityFailure) {
        self.checked += 1;
        if holds {
            return;
        }
        self.violations += 1;
        let fail = f();
        if !self.violated_orders.contains(&fail.k) {
            self.violated_orders.push(fail.k);
        }
        if self.failures.len() < MAX_LISTED {
            self.failures.push(fail);
        }
    }

    pub fn holds_for(&self, k: u32) -> bool {
        !self.violated_orders.contains(&k)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LadderInequalityReport {
    pub k_range: (u32, u32),
    pub p_max: u64,
    /// Checked for `p ≥ 0`.
    pub ratio_sum: InequalityTally,
    /// The intermediate bound of the textbook argument, checked for `p ≥ 0`.
    pub ratio_sum_majorant: InequalityTally,
    /// Checked for `p ≥ 1`; at `p = 0` both terms vanish.
    pub ratio_monotone: InequalityTally,
}

/// `√a + √b < 1` for nonnegative rationals, decided exactly.
fn sqrt_sum_below_one(a: &Rational, b: &Rational) -> bool {
    if *b >= 1 {
        return false;
    }
    let gap = Rational::from(1) + b - a;
    if gap <= 0 {
        return false;
    }
    Rational::from(4 * b) < Rational::from(&gap * &gap)
}

fn ratio(num: rug::Integer, den: rug::Integer) -> Rational {
    Rational::from((num, den))
}

/// Evaluates the two ratio inequalities of the ladder coefficients for all
/// `k_min ≤ k ≤ k_max`, `i < k`, `p ≤ p_max` in exact rational arithmetic.
pub fn verify_ladder_inequalities(
    k_min: u32,
    k_max: u32,
    p_max: u64,
) -> Result<LadderInequalityReport> {
    if k_min == 0 || k_min > k_max {
        return Err(invalid("need 1 ≤ k_min ≤ k_max"));
    }
    let mut sum = InequalityTally::new();
    let mut majorant = InequalityTally::new();
    let mut monotone = InequalityTally::new();
    for k in k_min..=k_max {
        for i in 0..k {
            for p in 0..=p_max {
                let bp = beta_sq(k, i, p);
                let bp1 = beta_sq(k, i, p + 1);
                let a = ratio(bp.clone(), bp1.clone());
                let b = ratio(1.into(), bp1.clone());
                sum.record(sqrt_sum_below_one(&a, &b), || InequalityFailure {
                    inequality: Inequality::RatioSum,
                    k,
                    i,
                    p,
                    lhs: a.to_f64().sqrt() + b.to_f64().sqrt() - 1.0,
                });

                let m = u64::from(k) * p + u64::from(i);
                let ak = ratio(m.into(), (m + 1).into()).pow(k);
                let bk = ratio(1.into(), (m + 1).into()).pow(k);
                majorant.record(sqrt_sum_below_one(&ak, &bk), || InequalityFailure {
                    inequality: Inequality::RatioSumMajorant,
                    k,
                    i,
                    p,
                    lhs: ak.to_f64().sqrt() + bk.to_f64().sqrt() - 1.0,
                });

                if p >= 1 {
                    let bm = beta_sq(k, i, p - 1);
                    // β_{p−1}²β_{p+1}² < β_p⁴
                    let holds = bm.clone() * &bp1 < bp.clone() * &bp;
                    monotone.record(holds, || InequalityFailure {
                        inequality: Inequality::RatioMonotone,
                        k,
                        i,
                        p,
                        lhs: ratio(bm.clone(), bp.clone()).to_f64().sqrt() - a.to_f64().sqrt(),
                    });
                }
            }
        }
    }
    Ok(LadderInequalityReport {
        k_range: (k_min, k_max),
        p_max,
        ratio_sum: sum,
        ratio_sum_majorant: majorant,
        ratio_monotone: monotone,
    })
}
