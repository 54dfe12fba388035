use rug::Integer;
use squeeze_core::cinfty::{
    analytic_series, classify_vector, log_power_norms, power_norm_rows, power_norm_sq,
    quasianalytic_series, Classification, SeriesVerdict, DEFAULT_POWER_CAP,
};

/// `(2n−1)!!`, the even Gaussian moments `⟨e_0, (a + a†)^{2n} e_0⟩`.
fn double_factorial_odd(n: u32) -> Integer {
    (1..=n).fold(Integer::from(1), |acc, j| acc * (2 * j - 1))
}

#[test]
fn first_order_norms_are_gaussian_moments() {
    let rows = power_norm_rows(1, 0, 0, 30, DEFAULT_POWER_CAP).unwrap();
    for (n, r) in rows.iter().enumerate() {
        assert_eq!(*r, double_factorial_odd(n as u32), "n = {n}");
    }
}

#[test]
fn squeeze_block_first_norms() {
    // A^(2,0) e_0 = β₁ e_1 with β₁² = 1·2, then A e_1 = β₁ e_0 + β₂ e_2 with β₂² = 3·4
    assert_eq!(power_norm_sq(2, 0, 0, 1).unwrap(), 2);
    assert_eq!(power_norm_sq(2, 0, 0, 2).unwrap(), 2 * (2 + 12));
}

#[test]
fn float_norms_follow_exact_ones() {
    let exact = power_norm_rows(3, 1, 2, 25, DEFAULT_POWER_CAP).unwrap();
    let logs = log_power_norms(3, 1, 2, 25).unwrap();
    for (n, (e, l)) in exact.iter().zip(&logs).enumerate() {
        let want = 0.5 * e.to_f64().ln();
        assert!((l - want).abs() < 1e-12 * want.abs().max(1.0), "n = {n}");
    }
}

#[test]
fn analytic_radius_brackets_squeeze_threshold() {
    assert_eq!(
        analytic_series(2, 1, 0, 0.35, 3000).unwrap().verdict,
        SeriesVerdict::Converges
    );
    assert_eq!(
        analytic_series(2, 1, 0, 0.45, 3000).unwrap().verdict,
        SeriesVerdict::Diverges
    );
}

#[test]
fn quasianalytic_split() {
    assert_eq!(
        quasianalytic_series(2, 1, 1, 4000).unwrap().verdict,
        SeriesVerdict::Diverges
    );
    let q = quasianalytic_series(4, 3, 0, 4000).unwrap();
    assert_eq!(q.verdict, SeriesVerdict::Converges);
    assert!(q.majorant_holds && q.tail_bound.unwrap() < 1e-3);
}

#[test]
fn vector_classes() {
    assert!(matches!(
        classify_vector(1, 0, 0, 400).unwrap().classification,
        Classification::Entire
    ));
    match classify_vector(2, 0, 0, 2000).unwrap().classification {
        Classification::Analytic {
            radius_lower,
            radius_upper,
            radius_estimate,
        } => {
            assert!(radius_lower <= radius_estimate && radius_estimate <= radius_upper);
        }
        c => panic!("expected analytic, got {c:?}"),
    }
    assert!(matches!(
        classify_vector(3, 0, 0, 2000).unwrap().classification,
        Classification::NotQuasianalyticWitnessed
    ));
}

#[test]
fn caps_and_arguments() {
    assert!(power_norm_rows(1, 0, 0, 600, DEFAULT_POWER_CAP).is_err());
    assert!(power_norm_sq(2, 2, 0, 1).is_err());
    assert!(analytic_series(1, 0, 0, -1.0, 100).is_err());
}
