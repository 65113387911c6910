use model_seed::*;
use proptest::prelude::*;

proptest! {
    #[test]
    fn partition_of_unity(x in 0.0f64..2.0, rho in 1e-3f64..1.0) {
        prop_assert!((chi1(x).powi(2) + chi1_bar(x).powi(2) - 1.0).abs() < 1e-14);
        prop_assert!((chi_rho(x, rho).powi(2) + chi_rho_bar(x, rho).powi(2) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn kappa_is_bounded_and_monotone_below_half(a in 0.0f64..0.5, b in 0.0f64..0.5, sigma in 1e-4f64..0.5, kexp in 1u32..4) {
        let spec = CutoffSpec::new(sigma, kexp).unwrap();
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let (kl, kh) = (cutoff_kappa(lo, &spec).unwrap(), cutoff_kappa(hi, &spec).unwrap());
        prop_assert!((0.0..=1.0).contains(&kl) && kl <= kh);
    }

    #[test]
    fn seed_degree_one_is_linear_in_root_alpha(alpha in 1e-6f64..1e-2, x0 in 0.0f64..1.0, k in 0.01f64..1.0) {
        let base = seed_kernels(&ModelConfig::qed(0.1, 1e-4, 0.01)).unwrap();
        let s = seed_kernels(&ModelConfig::qed(0.1, alpha, 0.01)).unwrap();
        let x = XPoint::new(x0, [0.0, 0.0, -0.5 * x0]);
        let kv = [0.0, k, 0.0];
        let (v, v0) = (s.v01(&x, &kv), base.v01(&x, &kv));
        let c = (alpha / 1e-4).sqrt();
        for i in 0..3 {
            prop_assert!((v[i] - v0[i] * c).frobenius() <= 1e-12 * (1.0 + v[i].frobenius()));
        }
    }
}
