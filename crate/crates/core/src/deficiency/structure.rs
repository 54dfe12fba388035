use serde::{Deserialize, Serialize};

use super::classify::alpha_products;
use super::{solve_with_initial, Branch, DeficiencySequence, Gauge};
use crate::arith::Scalar;
use crate::error::{invalid, Result};

/// Outcome of one structural check; `first_violation` is a position `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub passed: bool,
    pub first_violation: Option<usize>,
    pub checked: usize,
}

impl CheckOutcome {
    fn from_positions(mut it: impl Iterator<Item = (usize, bool)>) -> Self {
        let mut checked = 0;
        let mut first = None;
        for (p, ok) in &mut it {
            checked += 1;
            if !ok && first.is_none() {
                first = Some(p);
            }
        }
        CheckOutcome {
            passed: first.is_none(),
            first_violation: first,
            checked,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructureReport {
    pub k: u32,
    pub i: u32,
    pub p_max: usize,
    /// `d_p > 0` for the `+` branch.
    pub positivity: CheckOutcome,
    /// `d_{p+1} − d_{p−1} < α_p⋯α_0 (d_2 − d_0)` for `1 ≤ p ≤ P−1`.
    pub gap_bound: CheckOutcome,
    /// `d_p < d_{p−2}` for `p ≥ 2`.
    pub decreasing: CheckOutcome,
    /// `d⁻_p = (−1)^p d⁺_p`, compared without tolerance.
    pub alternation: CheckOutcome,
}

impl StructureReport {
    pub fn all_pass(&self) -> bool {
        self.positivity.passed
            && self.gap_bound.passed
            && self.decreasing.passed
            && self.alternation.passed
    }

    /// First failing check and position, if any.
    pub fn first_failure(&self) -> Option<(&'static str, usize)> {
        [
            ("positivity", self.positivity),
            ("gap-bound", self.gap_bound),
            ("decreasing", self.decreasing),
            ("alternation", self.alternation),
        ]
        .into_iter()
        .find_map(|(name, c)| c.first_violation.map(|p| (name, p)))
    }
}

/// Structural checks on a `+` branch sequence in the `d` gauge with `d_0 = 1`.
///
/// The `−` branch used for the alternation check is solved afresh from its
/// own recurrence rather than derived from `seq`.
pub fn verify_structure(seq: &DeficiencySequence) -> Result<StructureReport> {
    if seq.gauge != Gauge::D || seq.branch != Branch::Plus {
        return Err(invalid(
            "structure checks need the + branch in the d gauge (k ≥ 3)",
        ));
    }
    let d = seq.real_entries();
    if d[0] != d[0].one_like() {
        return Err(invalid("structure checks need d_0 = 1"));
    }
    let p_max = seq.p_max();
    if p_max < 2 {
        return Err(invalid("structure checks need P ≥ 2"));
    }
    let zero = d[0].zero_like();

    let positivity =
        CheckOutcome::from_positions(d.iter().enumerate().map(|(p, v)| (p, *v > zero)));

    let alpha = alpha_products(seq.k, seq.i, p_max, &d[0]);
    let base = d[2].clone() - &d[0];
    let gap_bound = CheckOutcome::from_positions((1..p_max).map(|p| {
        let lhs = d[p + 1].clone() - &d[p - 1];
        (p, lhs < alpha[p].clone() * &base)
    }));

    let decreasing = CheckOutcome::from_positions((2..=p_max).map(|p| (p, d[p] < d[p - 2])));

    let minus = solve_with_initial(seq.k, seq.i, Branch::Minus, p_max, &seq.precision, 1.0)?;
    let alternation =
        CheckOutcome::from_positions(minus.entries.iter().enumerate().map(|(p, m)| {
            let want = if p % 2 == 0 {
                d[p].clone()
            } else {
                -d[p].clone()
            };
            (p, m.re == want && m.im.is_zero())
        }));

    Ok(StructureReport {
        k: seq.k,
        i: seq.i,
        p_max,
        positivity,
        gap_bound,
        decreasing,
        alternation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::PrecisionConfig;
    use crate::deficiency::solve_recurrence;

    #[test]
    fn cubic_and_quartic_blocks_pass() {
        let prec = PrecisionConfig::default();
        for (k, i) in [(3, 0), (4, 2)] {
            let s = solve_recurrence(k, i, Branch::Plus, 100, &prec).unwrap();
            let r = verify_structure(&s).unwrap();
            assert!(r.all_pass(), "{:?}", r.first_failure());
            assert_eq!(r.gap_bound.checked, 99);
        }
    }

    #[test]
    fn names_first_violation() {
        let prec = PrecisionConfig::default();
        let mut s = solve_recurrence(3, 1, Branch::Plus, 20, &prec).unwrap();
        s.entries[9].re = -s.entries[9].re.clone();
        let r = verify_structure(&s).unwrap();
        assert_eq!(r.positivity.first_violation, Some(9));
        assert_eq!(r.first_failure(), Some(("positivity", 9)));
    }

    #[test]
    fn rejects_wrong_gauge() {
        let prec = PrecisionConfig::default();
        let s = solve_recurrence(2, 0, Branch::Plus, 10, &prec).unwrap();
        assert!(verify_structure(&s).is_err());
    }
}
