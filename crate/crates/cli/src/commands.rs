use std::collections::BTreeSet;

use anyhow::Result;
use num_complex::Complex64 as C64;
use serde_json::json;
use squeeze_core::cinfty::{
    analytic_series, classify_vector, quasianalytic_series, PowerNormTable, SeriesVerdict,
};
use squeeze_core::deficiency::{
    deficiency_indices, solve_recurrence, BlockVerdict, Branch, Summability,
};
use squeeze_core::expgroup::{
    coherent_oracle, group_law_residual, inverse_residual, squeeze_decomposition_check,
    stabilization_study, Method, Scope, Spectrum, StabilizationVerdict,
};
use squeeze_core::sbmodel::{IdentityCheck, ModelParameter, SbContext, SbModel};
use squeeze_core::{Cplx, PrecisionConfig, Scalar};

use crate::args::{
    CinftyArgs, Common, Complex, DeficiencyArgs, ExpgroupArgs, Identity, SbmodelArgs,
};
use crate::report::{cell, Audit, Outcome, Status, Table};
use crate::usage;

/// Residuals of the truncated unitaries must stay within this multiple of τ.
const RESIDUAL_FACTOR: f64 = 1e3;
/// Significant digits for exact entries echoed as decimals.
const SAMPLE_DIGITS: usize = 20;
const DEFAULT_POINTS: [Complex; 2] = [Complex { re: 0.5, im: 0.0 }, Complex { re: 1.0, im: 1.0 }];

pub fn precision(common: &Common) -> Result<PrecisionConfig> {
    Ok(match common.digits {
        Some(d) => PrecisionConfig::with_digits(d)?,
        None => PrecisionConfig::from_env()?,
    })
}

fn mpfr_audit(prec: &PrecisionConfig, lost: f64) -> Audit {
    Audit {
        arithmetic: "mpfr",
        digits: prec.digits,
        tolerance: prec.tau(),
        max_digits_lost: lost,
    }
}

fn blocks(k: u32, i: Option<u32>) -> Result<Vec<u32>> {
    if k == 0 {
        return Err(usage("--k must be at least 1"));
    }
    match i {
        Some(i) if i >= k => Err(usage(format!("--i {i} must be below --k {k}"))),
        Some(i) => Ok(vec![i]),
        None => Ok((0..k).collect()),
    }
}

pub fn deficiency(a: &DeficiencyArgs, prec: &PrecisionConfig) -> Result<Outcome> {
    let selected = blocks(a.k, a.i)?;
    let report = deficiency_indices(a.k, a.p_max, prec)?;
    let chosen: Vec<&BlockVerdict> = report
        .blocks
        .iter()
        .filter(|b| selected.contains(&b.i))
        .collect();
    let mut out_blocks = Vec::new();
    let mut table = Table::new(&[
        "i",
        "branch",
        "summable",
        "partial_sum",
        "tail_bound",
        "decade_exponent",
        "oracle_error",
    ]);
    for b in &chosen {
        let depth = a.sample.min(a.p_max).max(2);
        let seq = solve_recurrence(a.k, b.i, Branch::Plus, depth, prec)?;
        let sample: Vec<[String; 2]> = seq
            .entries
            .iter()
            .take(a.sample)
            .map(|c| {
                [
                    c.re.to_decimal(SAMPLE_DIGITS),
                    c.im.to_decimal(SAMPLE_DIGITS),
                ]
            })
            .collect();
        let mut v = serde_json::to_value(b)?;
        v["entries_sample"] = json!(sample);
        out_blocks.push(v);
        for (name, s) in [("plus", &b.plus), ("minus", &b.minus)] {
            let (exp, err) = match s {
                Summability::Divergent(w) => {
                    (Some(w.decade_exponent), Some(w.oracle.max_rel_error))
                }
                Summability::Convergent(_) => (None, None),
            };
            table.push(vec![
                b.i.to_string(),
                name.into(),
                b.summable.to_string(),
                b.partial_sum_at_p.to_string(),
                cell(b.tail_bound),
                cell(exp),
                cell(err),
            ]);
        }
    }
    let lost = chosen.iter().map(|b| b.digits_lost).fold(0.0, f64::max);
    let used = chosen
        .iter()
        .map(|b| b.digits_used)
        .max()
        .unwrap_or(prec.digits);
    let mut audit = mpfr_audit(prec, lost);
    audit.digits = used;
    Ok(Outcome {
        status: Status::Decided,
        audit,
        results: json!({
            "k": report.k,
            "indices": [report.indices.0, report.indices.1],
            "essentially_selfadjoint": report.essentially_selfadjoint,
            "blocks": out_blocks,
        }),
        table,
    })
}

pub fn cinfty(a: &CinftyArgs, prec: &PrecisionConfig) -> Result<Outcome> {
    let selected = blocks(a.k, a.i)?;
    let rows = a.n_max.min(a.table_rows);
    let rows = u32::try_from(rows).map_err(|_| usage("--table-rows is too large"))?;
    let mut status = Status::Decided;
    let mut out = Vec::new();
    let mut table = Table::new(&[
        "i",
        "p",
        "n",
        "norm_sq",
        "lower_bound_holds",
        "upper_bound_holds",
    ]);
    let verdict_status = |v: SeriesVerdict| match v {
        SeriesVerdict::Inconclusive => Status::Inconclusive,
        _ => Status::Decided,
    };
    for i in selected {
        let norms = PowerNormTable::build(a.k, i, a.p, rows)?;
        for r in &norms.rows {
            table.push(vec![
                i.to_string(),
                a.p.to_string(),
                r.n.to_string(),
                r.norm_sq.clone(),
                r.lower_ok.to_string(),
                r.upper_ok.to_string(),
            ]);
        }
        let mut v = json!({
            "i": i,
            "p": a.p,
            "table": norms.rows,
            "table_truncated": rows as usize != a.n_max,
        });
        if let Some(t) = a.t {
            let s = analytic_series(a.k, i, a.p, t, a.n_max)?;
            status = status.worst(verdict_status(s.verdict));
            v["analytic"] = json!({
                "t": s.t,
                "verdict": s.verdict,
                "converged": s.verdict == SeriesVerdict::Converges,
                "partial_sum": s.log_partial_sums.last().map(|l| l.exp()),
                "ratio_limit": s.ratio_limit,
                "ratio_growth_exponent": s.ratio_growth_exponent,
                "first_ratio_above_one": s.first_ratio_above_one,
                "ratios_exceed_one": s.ratios_exceed_one,
            });
        }
        if a.quasianalytic {
            let s = quasianalytic_series(a.k, i, a.p, a.n_max)?;
            status = status.worst(verdict_status(s.verdict));
            v["quasianalytic"] = json!({
                "verdict": s.verdict,
                "converges": s.verdict == SeriesVerdict::Converges,
                "partial_sum": s.partial_sums.last(),
                "tail_bound": s.tail_bound,
                "majorant_holds": s.majorant_holds,
                "lower_bound_holds": s.lower_bound_holds,
                "decade_exponent": s.decade_exponent,
                "harmonic_constant": s.harmonic_constant,
                "harmonic_nondecreasing": s.harmonic_nondecreasing,
            });
        }
        if a.n_max >= 20 {
            let c = classify_vector(a.k, i, a.p, a.n_max)?;
            let mut cls = serde_json::to_value(&c.classification)?;
            cls["ratio_growth_exponent"] = json!(c.ratio_growth_exponent);
            cls["root_growth"] = json!(c.root_growth);
            v["classification"] = cls;
        }
        out.push(v);
    }
    Ok(Outcome {
        status,
        audit: Audit {
            arithmetic: "exact",
            digits: prec.digits,
            tolerance: 0.0,
            max_digits_lost: 0.0,
        },
        results: json!({ "k": a.k, "blocks": out }),
        table,
    })
}

pub fn expgroup(a: &ExpgroupArgs, prec: &PrecisionConfig) -> Result<Outcome> {
    if a.k == 0 {
        return Err(usage("--k must be at least 1"));
    }
    if a.dims.len() < 2 || a.dims.windows(2).any(|d| d[1] <= d[0]) {
        return Err(usage(
            "--dims must be strictly increasing with at least two entries",
        ));
    }
    if !(a.t.is_finite() && a.theta.is_finite()) {
        return Err(usage("--t and --theta must be finite"));
    }
    let (theta, t) = match a.xi {
        Some(xi) => (xi.im.atan2(xi.re), a.t * xi.re.hypot(xi.im)),
        None => (a.theta, a.t),
    };
    let bound = RESIDUAL_FACTOR * prec.tau();
    let audit = mpfr_audit(prec, 0.0);

    if a.decomposition_check {
        if a.k != 2 {
            return Err(usage("--decomposition-check needs --k 2"));
        }
        let xi = match a.xi {
            Some(xi) => Cplx::new(prec.real(xi.re), prec.real(xi.im)),
            None => Cplx::cis(&prec.real(a.theta)),
        };
        let d = squeeze_decomposition_check(&prec.real(a.t), &xi, a.n)?;
        let passed = d.residual <= bound && d.cross_terms_zero;
        let mut table = Table::new(&["quantity", "value", "tolerance"]);
        table.push(vec![
            "decomposition_residual".into(),
            d.residual.to_string(),
            bound.to_string(),
        ]);
        return Ok(Outcome {
            status: if passed {
                Status::Decided
            } else {
                Status::NumericalFailure
            },
            audit,
            results: json!({
                "n": a.n,
                "residual": d.residual,
                "cross_terms_zero": d.cross_terms_zero,
                "tolerance": bound,
                "passed": passed,
            }),
            table,
        });
    }

    let study = stabilization_study(a.k, theta, t, &a.dims, a.window)?;
    let (th, tt) = (prec.real(theta), prec.real(t));
    let unitarity = Spectrum::new(a.k, Scope::Full, &th, a.n)?
        .exponential(&tt)
        .unitarity_residual();
    let group = group_law_residual(a.k, Scope::Full, &th, &tt, &tt, a.n, Method::EigTridiagonal)?;
    let inverse = inverse_residual(a.k, Scope::Full, &th, &tt, a.n, Method::EigTridiagonal)?;
    let residuals_ok = unitarity <= bound && group <= bound && inverse <= bound;

    let oracle = (a.k == 1).then(|| {
        let z = Cplx::cis(&prec.real(theta)).scale(&prec.real(t));
        study
            .column0
            .iter()
            .zip(coherent_oracle(&z, a.window))
            .map(|(x, y)| (C64::new(x.0, x.1) - y.to_c64()).norm())
            .fold(0.0, f64::max)
    });

    let mut status = match study.verdict {
        StabilizationVerdict::Inconclusive => Status::Inconclusive,
        _ => Status::Decided,
    };
    if !residuals_ok {
        status = status.worst(Status::NumericalFailure);
    }
    let mut table = Table::new(&["dim_from", "dim_to", "delta"]);
    for (d, delta) in study.dims.windows(2).zip(&study.deltas) {
        table.push(vec![d[0].to_string(), d[1].to_string(), delta.to_string()]);
    }
    Ok(Outcome {
        status,
        audit,
        results: json!({
            "k": a.k,
            "theta": theta,
            "t": t,
            "stabilization": study,
            "residuals": {
                "n": a.n,
                "unitarity": unitarity,
                "group_law": group,
                "inverse": inverse,
                "tolerance": bound,
                "passed": residuals_ok,
            },
            "coherent_oracle_error": oracle,
        }),
        table,
    })
}

pub fn sbmodel(a: &SbmodelArgs) -> Result<Outcome> {
    let param = ModelParameter::new(a.lambda, a.generic)?;
    let model = SbModel::new(SbContext::new(param), a.n_max)?;
    let points: Vec<C64> = if a.z.is_empty() {
        DEFAULT_POINTS.to_vec()
    } else {
        a.z.clone()
    }
    .into_iter()
    .map(|z| C64::new(z.re, z.im))
    .collect();
    let degrees = 0..=a.n_max;
    let pairs = || {
        degrees
            .clone()
            .flat_map(|n| degrees.clone().map(move |m| (n, m)))
    };
    let mut checks: Vec<IdentityCheck> = Vec::new();
    match a.verify {
        Identity::All => checks = model.verify_all(&points)?,
        Identity::Orthonormality => {
            for (n, m) in pairs() {
                checks.push(model.orthonormality_c(n, m)?);
                checks.push(model.orthonormality_r(n, m)?);
            }
        }
        Identity::Transform => {
            for &z in &points {
                checks.extend(model.transform_checks(z)?);
            }
        }
        Identity::Kernel => {
            for &z in &points {
                checks.push(model.kernel_identity(z)?);
                checks.push(model.kernel_sum(z, z.conj() * 0.5, 60));
            }
        }
        Identity::Mult => {
            for &z in &points {
                for n in degrees.clone() {
                    checks.extend(model.mult_checks(n, z)?);
                }
            }
        }
        Identity::Ladder => {
            for &z in &points {
                for n in degrees.clone() {
                    checks.extend(model.ladder_checks(n, z));
                }
            }
        }
        Identity::Symmetry => {
            for (n, m) in pairs() {
                checks.push(model.symmetry_literal(n, m)?);
                checks.push(model.symmetry_image(n, m)?);
                checks.push(model.tridiagonality(n, m)?);
            }
        }
        Identity::Reproducing => {
            let coeffs: Vec<C64> = (0..=5.min(a.n_max))
                .map(|m| C64::new(1.0 / (m as f64 + 1.0), 0.5 - 0.1 * m as f64))
                .collect();
            for &z in &points {
                checks.push(model.reproducing(&coeffs, z)?);
            }
        }
    }
    let failed: Vec<String> = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.name.clone())
        .collect();
    let failed_names: BTreeSet<&str> = failed.iter().map(String::as_str).collect();
    let max_residual = checks.iter().map(|c| c.residual).fold(0.0, f64::max);
    let lost = checks
        .iter()
        .filter_map(|c| c.digits_lost)
        .fold(0.0, f64::max);

    let mut table = Table::new(&[
        "identity",
        "lambda",
        "n",
        "m",
        "z_re",
        "z_im",
        "lhs_re",
        "lhs_im",
        "rhs_re",
        "rhs_im",
        "residual",
        "tolerance",
        "passed",
    ]);
    let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
    for c in &checks {
        table.push(vec![
            c.name.clone(),
            c.lambda.to_string(),
            opt(c.n),
            opt(c.m),
            cell(c.z.map(|z| z[0])),
            cell(c.z.map(|z| z[1])),
            c.lhs[0].to_string(),
            c.lhs[1].to_string(),
            c.rhs[0].to_string(),
            c.rhs[1].to_string(),
            c.residual.to_string(),
            c.tolerance.to_string(),
            c.passed.to_string(),
        ]);
    }
    Ok(Outcome {
        status: if failed.is_empty() {
            Status::Decided
        } else {
            Status::Inconclusive
        },
        audit: Audit {
            arithmetic: "f64",
            digits: 16,
            tolerance: f64::EPSILON,
            max_digits_lost: lost,
        },
        results: json!({
            "lambda": a.lambda,
            "checks": checks.len(),
            "failed": failed.len(),
            "failed_identities": failed_names,
            "max_residual": max_residual,
            "identities": checks,
        }),
        table,
    })
}
