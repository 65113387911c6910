use model_seed::*;
use pauli_kernels::{PhotonArg, Polarization, PolarizationModel};
use std::f64::consts::PI;

const DIRS: [(f64, f64); 4] = [(0.3, 0.0), (1.1, 0.7), (2.0, 2.5), (2.9, 4.0)];

fn photon(k: f64, th: f64, ph: f64) -> [f64; 3] {
    PhotonArg::new(k, th, ph, Polarization::Plus).momentum()
}

#[test]
fn kappa_matches_reference_values() {
    let spec = CutoffSpec::new(0.01, 1).unwrap();
    assert_eq!(cutoff_kappa(0.01, &spec).unwrap(), 1.0);
    assert!((cutoff_kappa(0.005, &spec).unwrap() - 0.5).abs() < 1e-15);
    assert_eq!(cutoff_kappa(2.0, &spec).unwrap(), 0.0);
    assert_eq!(cutoff_kappa(0.3, &spec).unwrap(), 1.0);
    let k2 = CutoffSpec::new(0.01, 2).unwrap();
    assert!((cutoff_kappa(0.005, &k2).unwrap() - 0.25).abs() < 1e-15);
    assert!(CutoffSpec::new(0.0, 1).is_err());
}

#[test]
fn measure_weight_factorizes_over_slots() {
    let spec = CutoffSpec::new(0.2, 1).unwrap();
    let a = PhotonArg::new(0.1, 0.4, 0.0, Polarization::Plus);
    let b = PhotonArg::new(0.6, 1.3, 0.0, Polarization::Minus);
    let wa = measure_weight(&[a], &spec).unwrap();
    let wb = measure_weight(&[b], &spec).unwrap();
    let wab = measure_weight(&[a, b], &spec).unwrap();
    assert!((wab - wa * wb).abs() < 1e-15 * wab);
    let expect_a = 0.5 / 0.1f64.sqrt() * 0.01 * 0.4f64.sin();
    assert!((wa - expect_a).abs() < 1e-15);
    let above = CutoffSpec::new(50.0, 1).unwrap();
    let wu = measure_weight(&[a], &above).unwrap();
    assert!((wu - 0.1f64.powf(1.5) * 0.4f64.sin()).abs() < 1e-15);
    let zero = PhotonArg::new(0.0, 0.4, 0.0, Polarization::Plus);
    assert_eq!(measure_weight(&[zero], &spec), Err(SeedError::ZeroMomentum(0.0)));
}

#[test]
fn config_validation() {
    assert!(ModelConfig::qed(0.4, 1e-3, 0.01).validate().is_err());
    assert!(ModelConfig::qed(0.1, 1e-3, 1.0).validate().is_err());
    assert!(ModelConfig::qed(0.1, -1.0, 0.01).validate().is_err());
    assert!(seed_kernels(&ModelConfig::nelson(0.1, 1e-3, 0.01)).is_err());
    assert!(nelson_seed_kernels(&ModelConfig::nelson(0.1, 1e-3, 0.01)).is_ok());
}

#[test]
fn degree_two_kernels_are_polarization_products() {
    let s = seed_kernels(&ModelConfig::qed(0.1, 1e-3, 0.01)).unwrap();
    let pm = PolarizationModel::Transverse;
    for &(t1, f1) in &DIRS {
        for &(t2, f2) in &DIRS {
            for l1 in [Polarization::Plus, Polarization::Minus] {
                for l2 in [Polarization::Plus, Polarization::Minus] {
                    let (e1, e2) = (pm.vector(t1, f1, l1), pm.vector(t2, f2, l2));
                    let dot = e1[0] * e2[0] + e1[1] * e2[1] + e1[2] * e2[2];
                    let (ka, kb) = (photon(0.4, t1, f1), photon(0.7, t2, f2));
                    let w11 = dot_m(&e1, &s.w2(Degree2::D11, &XPoint::ORIGIN, &ka, &kb), &e2);
                    let w02 = dot_m(&e1, &s.w2(Degree2::D02, &XPoint::ORIGIN, &ka, &kb), &e2);
                    assert!((w11.w0.re - 2e-3 * dot).abs() < 1e-16);
                    assert!((w02.w0.re - 1e-3 * dot).abs() < 1e-16);
                    assert!(w11.vector_norm() == 0.0);
                }
            }
        }
    }
}

#[test]
fn seed_degree_one_at_zero_momentum() {
    // p = 0, X⃗ = 0: the minimal-coupling scalar part vanishes; the spin
    // part is the Zeeman term i√α τ·(k⃗ × ε).
    let alpha = 4e-3;
    let s = seed_kernels(&ModelConfig::qed(0.0, alpha, 0.01)).unwrap();
    let pm = PolarizationModel::Transverse;
    for &(th, ph) in &DIRS {
        let k = photon(0.5, th, ph);
        let e = pm.vector(th, ph, Polarization::Minus);
        let w = dot_v(&e, &s.v01(&XPoint::new(0.2, [0.0; 3]), &k));
        assert!(w.w0.norm() < 1e-18);
        let c = [k[1] * e[2] - k[2] * e[1], k[2] * e[0] - k[0] * e[2], k[0] * e[1] - k[1] * e[0]];
        for l in 0..3 {
            assert!((w.wvec[l].im - alpha.sqrt() * c[l]).abs() < 1e-16);
            assert_eq!(w.wvec[l].re, 0.0);
        }
    }
}

#[test]
fn nelson_kernels_have_no_spin_part() {
    let s = nelson_seed_kernels(&ModelConfig::nelson(0.2, 1e-2, 0.05)).unwrap();
    for &(th, ph) in &DIRS {
        let x = XPoint::new(0.6, [0.1, -0.2, 0.3]);
        let v = s.v01(&x, &photon(0.8, th, ph));
        assert!(v.iter().all(|c| c.vector_norm() == 0.0));
        let khat = PhotonArg::new(1.0, th, ph, Polarization::Plus).direction();
        let w = dot_v(&khat, &v).w0.re;
        let expect = -(1e-2f64).sqrt() * ((0.0 - 0.1) * khat[0] + (0.2 * khat[1]) + (0.2 - 0.3) * khat[2]);
        assert!((w - expect).abs() < 1e-15);
    }
}

#[test]
fn seed_degree_one_scales_with_root_alpha() {
    let sup = |alpha: f64| {
        let s = seed_kernels(&ModelConfig::qed(0.1, alpha, 0.01)).unwrap();
        let mut m = 0.0f64;
        for i in 0..=4 {
            let x = XPoint::new(i as f64 / 4.0, [0.0, 0.0, -(i as f64) / 4.0]);
            for &(th, ph) in &DIRS {
                for e in [Polarization::Plus, Polarization::Minus] {
                    let eps = PolarizationModel::Transverse.vector(th, ph, e);
                    m = m.max(dot_v(&eps, &s.v01(&x, &photon(1.0, th, ph))).frobenius());
                }
            }
        }
        m
    };
    let ratio = sup(4e-3) / sup(1e-3);
    assert!((ratio - 2.0).abs() < 0.4, "ratio {ratio}");
}

#[test]
fn vacuum_term_matches_closed_form_panels() {
    // ∫₀^σ (k/σ)² k dk = σ²/4, ∫_σ^½ k dk = (¼ − σ²)/2, bridge panel by a
    // composite Simpson rule.
    for &sigma in &[0.01, 0.2] {
        let cfg = ModelConfig::qed(0.1, 1e-3, sigma);
        let n = 20_000;
        let h = 0.5 / n as f64;
        let f = |k: f64| uv_bridge(k).powi(2) * k;
        let mut simpson = f(0.5) + f(1.0);
        for i in 1..n {
            simpson += if i % 2 == 1 { 4.0 } else { 2.0 } * f(0.5 + i as f64 * h);
        }
        simpson *= h / 3.0;
        let oracle = 2.0 * 4.0 * PI * (sigma * sigma / 4.0 + (0.25 - sigma * sigma) / 2.0 + simpson);
        assert!((vacuum_term(&cfg) - oracle).abs() < 1e-10, "{} vs {oracle}", vacuum_term(&cfg));
        let seed = seed_kernels(&cfg).unwrap();
        assert!((seed.energy - (0.005 + 0.5e-3 * oracle)).abs() < 1e-12);
        assert_eq!(seed.lambda0, 0.5);
    }
}

#[test]
fn free_part_and_vacuum_weight() {
    let s = seed_kernels(&ModelConfig::qed(0.25, 0.0, 0.01)).unwrap();
    let x = XPoint::new(0.5, [0.1, 0.2, 0.3]);
    let t = s.free(0.0, &x);
    assert!((t.w0.re - (0.5 - 0.25 * 0.3 + 0.5 * 0.14)).abs() < 1e-15);
    assert_eq!(s.h0(0.1, &x), 0.1 + t.w0.re);
    assert!(s.v01(&x, &[0.1, 0.2, 0.3]).iter().all(|v| v.frobenius() == 0.0));
    assert!((s.contraction_weight(0.005) - 0.25 / 0.005).abs() < 1e-12);
}
