use proptest::prelude::*;
use squeeze_core::expgroup::{truncated_exponential, Method, Scope};
use squeeze_core::fock::{beta_sq, block_of, fock_index, BlockIndex, ExactRadicalVector};
use squeeze_core::quadrature::{gauss_laguerre, gauss_legendre};
use squeeze_core::special::{hyp1f1, ln_gamma_real};
use squeeze_core::Cplx;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn beta_sq_is_a_product_of_consecutive_integers(k in 1u32..7, i in 0u32..7, p in 1u64..200) {
        prop_assume!(i < k);
        let base = u128::from(i) + u128::from(p - 1) * u128::from(k);
        let want: u128 = (1..=u128::from(k)).map(|j| base + j).product();
        let got = beta_sq(k, i, p);
        prop_assert!(got > 0);
        prop_assert_eq!(got.to_u128().unwrap(), want);
    }

    #[test]
    fn block_index_round_trip(k in 1u32..9, n in 0u64..100_000) {
        let (i, p) = block_of(n, k);
        prop_assert!(i < k);
        prop_assert_eq!(fock_index(k, i, p), n);
        prop_assert_eq!(BlockIndex::new(k, i, p).unwrap().fock_index(), n);
    }

    #[test]
    fn powers_alternate_in_parity(k in 1u32..5, i in 0u32..5, p in 0u64..6, n in 0usize..12) {
        prop_assume!(i < k);
        let mut v = ExactRadicalVector::basis(BlockIndex::new(k, i, p).unwrap());
        for _ in 0..n {
            v = v.apply_block();
        }
        prop_assert!(v.parity_consistent());
        for (t, _) in v.terms() {
            prop_assert_eq!((t.q as i64 - p as i64 - n as i64).rem_euclid(2), 0);
            prop_assert!(t.q <= p + n as u64);
        }
    }

    #[test]
    fn exact_norm_matches_numeric_norm(k in 1u32..4, p in 0u64..4, n in 0usize..8, theta in -3.0f64..3.0) {
        let mut v = ExactRadicalVector::basis(BlockIndex::new(k, 0, p).unwrap());
        for _ in 0..n {
            v = v.apply_block();
        }
        let exact = v.norm_sq().unwrap().to_f64();
        let numeric: f64 = v.to_numeric(&theta).iter().map(|(_, c)| c.norm_sqr()).sum();
        prop_assert!((exact - numeric).abs() <= 1e-12 * exact.max(1.0));
    }

    #[test]
    fn truncated_exponential_is_unitary(k in 1u32..5, n in 2usize..40, theta in -3.0f64..3.0, t in -1.0f64..1.0) {
        let u = truncated_exponential(k, Scope::Full, &theta, &t, n, Method::EigTridiagonal).unwrap();
        prop_assert!(u.matrix.unitarity_residual() < 1e-11);
    }

    #[test]
    fn kummer_transformation(a in -2.0f64..3.0, b in 0.5f64..4.0, x in -3.0f64..3.0, y in -3.0f64..3.0) {
        let c = |re: f64, im: f64| Cplx::new(re, im);
        let z = c(x, y);
        let lhs = hyp1f1(&c(a, 0.3), &c(b, 0.0), &z).unwrap().value.to_c64();
        let rhs = hyp1f1(&c(b - a, -0.3), &c(b, 0.0), &c(-x, -y)).unwrap().value.to_c64() * z.to_c64().exp();
        prop_assert!((lhs - rhs).norm() <= 1e-10 * lhs.norm().max(1.0));
    }

    #[test]
    fn legendre_is_exact_to_degree_2n_minus_1(n in 1usize..30, j in 0i32..60) {
        prop_assume!((j as usize) < 2 * n);
        let r = gauss_legendre(n).unwrap();
        let want = if j % 2 == 1 { 0.0 } else { 2.0 / (j as f64 + 1.0) };
        prop_assert!((r.integrate(|x| x.powi(j)) - want).abs() < 1e-13);
    }

    #[test]
    fn laguerre_weights_carry_the_mass(n in 1usize..40, alpha in -0.9f64..4.0) {
        let r = gauss_laguerre(n, alpha).unwrap();
        let mass = ln_gamma_real(alpha + 1.0).exp();
        prop_assert!((r.integrate(|_| 1.0) / mass - 1.0).abs() < 1e-12);
        prop_assert!(r.nodes.iter().all(|x| *x > 0.0) && r.weights.iter().all(|w| *w > 0.0));
    }
}
