use squeeze_core::expgroup::{
    coherent_oracle, inverse_residual, stabilization_study, taylor_apply, truncated_exponential,
    Method, Scope, StabilizationVerdict,
};
use squeeze_core::{Cplx, PrecisionConfig, Scalar};

fn prec(d: u32) -> PrecisionConfig {
    PrecisionConfig::with_digits(d).unwrap()
}

#[test]
fn eigen_and_series_routes_agree() {
    let p = prec(25);
    for (k, t, n) in [(1, 0.4, 12), (2, 0.15, 14), (3, 0.05, 12), (4, 0.02, 16)] {
        let (th, tt) = (p.real(0.9), p.real(t));
        let a = truncated_exponential(k, Scope::Full, &th, &tt, n, Method::EigTridiagonal).unwrap();
        let b =
            truncated_exponential(k, Scope::Full, &th, &tt, n, Method::ScalingSquaring).unwrap();
        assert!(a.matrix.max_abs_diff(&b.matrix) < 10.0 * p.tau(), "k = {k}");
    }
}

#[test]
fn adjoint_is_inverse() {
    let p = prec(30);
    for k in 1..=4 {
        let r = inverse_residual(
            k,
            Scope::Full,
            &p.real(0.2),
            &p.real(0.7),
            24,
            Method::EigTridiagonal,
        )
        .unwrap();
        assert!(r < 1e3 * p.tau(), "k = {k}: {r:e}");
    }
}

#[test]
fn taylor_series_matches_exponential_inside_radius() {
    // block (2,0), t below 1/(2√2)
    let p = prec(30);
    let (th, t) = (p.real(0.0), p.real(0.2));
    let f = [(0u64, Cplx::real(p.real(1.0)))];
    let r = taylor_apply(2, 0, &th, &t, &f, 120, &p).unwrap();
    assert!(r.converged && !r.diverging);
    let u =
        truncated_exponential(2, Scope::Block(0), &th, &t, 160, Method::EigTridiagonal).unwrap();
    for q in 0..20 {
        let d = (r.coefficients[q].clone() - u.matrix.get(q, 0))
            .abs()
            .to_f64();
        assert!(d < 1e-20, "q = {q}: {d:e}");
    }
}

#[test]
fn taylor_series_flags_cubic_divergence() {
    let p = prec(30);
    let f = [(0u64, Cplx::real(p.real(1.0)))];
    let r = taylor_apply(3, 0, &p.real(0.0), &p.real(0.5), &f, 60, &p).unwrap();
    assert!(r.diverging && !r.converged);
}

#[test]
fn first_order_column_is_coherent_state() {
    let s = stabilization_study(1, 1.1, 0.8, &[32, 64, 128], 6).unwrap();
    assert_eq!(s.verdict, StabilizationVerdict::Stabilizes);
    let p = prec(30);
    let z = Cplx::cis(&p.real(1.1)).scale(&p.real(0.8));
    for (a, b) in s.column0.iter().zip(coherent_oracle(&z, 6)) {
        let b = b.to_c64();
        assert!((a.0 - b.re).abs() < 1e-12 && (a.1 - b.im).abs() < 1e-12);
    }
}

#[test]
fn study_rejects_bad_dims() {
    assert!(stabilization_study(1, 0.0, 0.5, &[64, 32], 4).is_err());
    assert!(stabilization_study(1, 0.0, 0.5, &[64], 4).is_err());
    assert!(stabilization_study(1, 0.0, 0.5, &[8, 16], 9).is_err());
}
