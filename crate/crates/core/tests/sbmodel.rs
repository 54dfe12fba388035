use num_complex::Complex64 as C64;
use squeeze_core::sbmodel::{
    basis_phi, kernel_diagonal_bessel, kernel_k, literal_multiplier, ModelParameter, SbContext,
    SbModel, TRANSFORM_TOLERANCE,
};

fn model(lambda: f64, n_max: usize) -> SbModel {
    let p = ModelParameter::new(lambda, false).unwrap();
    SbModel::new(SbContext::new(p), n_max).unwrap()
}

#[test]
fn kernel_series_matches_finite_sums() {
    let m = model(0.25, 2);
    for (t, tau) in [
        (C64::new(2.0, 0.0), C64::new(0.0, 2.0)),
        (C64::new(1.2, -1.1), C64::new(-1.4, 0.3)),
    ] {
        let c = m.kernel_sum(t, tau, 60);
        assert!(c.passed, "{c:?}");
    }
}

#[test]
fn transform_at_sample_points() {
    for lambda in [0.25, 0.75] {
        let m = model(lambda, 3);
        for z in [C64::new(0.5, 0.0), C64::new(1.0, 1.0)] {
            for c in m.transform_checks(z).unwrap() {
                assert!(c.passed, "{c:?}");
            }
        }
    }
}

#[test]
fn diagonal_kernel_has_bessel_form() {
    let z = C64::new(1.0, 0.5);
    for lambda in [0.25, 0.75] {
        assert!(model(lambda, 1).kernel_identity(z).unwrap().passed);
        let (a, b) = (kernel_k(lambda, z, z), kernel_diagonal_bessel(lambda, z));
        assert!((a - b).norm() < 1e-12 * b.norm());
    }
}

#[test]
fn adjacent_symmetry_fails_but_gap_two_passes() {
    let m = model(0.75, 4);
    assert!(m.symmetry_literal(1, 3).unwrap().passed);
    assert!(!m.symmetry_literal(1, 2).unwrap().passed);
    assert!(m.symmetry_image(1, 2).unwrap().passed);
}

#[test]
fn literal_multiplication_misses_by_a_known_term() {
    let m = model(0.25, 4);
    let z = C64::new(1.0, 0.5);
    for n in 0..=4 {
        let checks = m.mult_checks(n, z).unwrap();
        let by = |s: &str| checks.iter().find(|c| c.name == s).unwrap().clone();
        assert!(by("mult_recurrence").passed && by("mult_image").passed);
        let q = n as f64 * (n as f64 + 0.25 * 2.0 - 1.0);
        let gap = (C64::i() * (1.0 - q) / (2.0 * z) * basis_phi(0.25, n, z)).norm();
        assert!(
            (by("mult_literal").residual - gap).abs() < 2.0 * TRANSFORM_TOLERANCE,
            "n = {n}"
        );
    }
    assert!(m.mult_checks(1, C64::new(0.0, 0.0)).is_err());
}

#[test]
fn literal_multiplier_is_the_expected_laurent_polynomial() {
    let z = C64::new(0.3, -0.7);
    let want = C64::i() * (1.0 - z * z) / (2.0 * z);
    assert!((literal_multiplier().eval(z) - want).norm() < 1e-14);
}

#[test]
fn reproducing_property() {
    let m = model(0.75, 4);
    let coeffs = [
        C64::new(1.0, 0.0),
        C64::new(0.0, -0.5),
        C64::new(0.25, 0.25),
    ];
    let c = m.reproducing(&coeffs, C64::new(0.6, 0.2)).unwrap();
    assert!(c.passed, "{c:?}");
}

#[test]
fn orthonormal_in_both_models() {
    let m = model(0.25, 4);
    for n in 0..=4 {
        for k in 0..=4 {
            assert!(m.orthonormality_c(n, k).unwrap().passed);
            assert!(m.orthonormality_r(n, k).unwrap().passed);
        }
    }
}
