use feshbach_core::random::{cutoff_pair, random_hermitian, random_pair, singular_pair, Surrogate};
use feshbach_core::*;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

#[test]
fn free_pair_maps_to_tau() {
    let s = Surrogate::random(&mut rng(1), 12);
    let (ch, cb) = cutoff_pair(0.3, 0.6);
    let tau = s.function(|e| e + 0.25);
    let p = FeshbachPair::with_chibar(tau.clone(), tau.clone(), s.function(&ch), s.function(&cb)).unwrap();
    assert!(max_abs(&(smooth_feshbach(&p) - &tau)) < 1e-14);
    let (q, qs) = intertwiners(&p);
    assert!(max_abs(&(q - &p.chi)) < 1e-14 && max_abs(&(qs - &p.chi)) < 1e-14);
    let rep = check_isospectral(&p);
    assert!(rep.passes(1e-12), "{rep:?}");
}

#[test]
fn projector_cutoff_gives_schur_complement() {
    let mut r = rng(2);
    let n = 10;
    let u = random::random_unitary(&mut r, n);
    let pdiag: Vec<f64> = (0..n).map(|i| if i < 4 { 1.0 } else { 0.0 }).collect();
    let proj = &u * diag(&pdiag) * u.adjoint();
    let id = CMat::identity(n, n);
    let h = &id + random_hermitian(&mut r, n, 0.3);
    let p = FeshbachPair::new(h.clone(), id.clone(), proj.clone()).unwrap();
    let f = smooth_feshbach(&p);
    // Schur complement in the eigenbasis of the projector.
    let hu = u.adjoint() * &h * &u;
    let a = hu.view((0, 0), (4, 4)).into_owned();
    let b = hu.view((0, 4), (4, n - 4)).into_owned();
    let cm = hu.view((4, 0), (n - 4, 4)).into_owned();
    let d = hu.view((4, 4), (n - 4, n - 4)).into_owned();
    let schur = a - b * d.try_inverse().unwrap() * cm;
    let fu = u.adjoint() * f * &u;
    assert!(max_abs(&(fu.view((0, 0), (4, 4)).into_owned() - schur)) < 1e-12);
    assert!(max_abs(&(fu.view((4, 4), (n - 4, n - 4)).into_owned() - DMatrix::identity(n - 4, n - 4))) < 1e-12);
    assert!(max_abs(&fu.view((0, 4), (4, n - 4)).into_owned()) < 1e-12);
}

#[test]
fn invertibility_matches_by_rank() {
    for seed in 0..5 {
        let (p, _) = random_pair(&mut rng(10 + seed), 8).unwrap();
        let rep = check_isospectral(&p);
        assert!(rep.equivalence && rep.rank_h == 8 && rep.rank_f == rep.dim_range, "{rep:?}");
        let (p, _) = singular_pair(&mut rng(20 + seed), 8).unwrap();
        let rep = check_isospectral(&p);
        assert!(rep.equivalence && rep.rank_h == 7 && rep.rank_f + 1 == rep.dim_range, "{rep:?}");
    }
}

#[test]
fn intertwining_and_qhq_identities() {
    for (seed, dim) in [(3, 8), (4, 16), (5, 32), (6, 64)] {
        let (p, _) = random_pair(&mut rng(seed), dim).unwrap();
        let rep = check_isospectral(&p);
        assert!(rep.intertwining < 1e-10, "{rep:?}");
        assert!(rep.qhq.unwrap() < 1e-10, "{rep:?}");
        assert!(rep.complement < 1e-10, "{rep:?}");
    }
}

#[test]
fn inverse_formulas_hold() {
    for seed in 0..10 {
        let (p, _) = random_pair(&mut rng(100 + seed), 8 + 3 * seed as usize).unwrap();
        let rep = check_isospectral(&p);
        assert!(rep.inverse_f.unwrap() < 1e-9 && rep.inverse_h.unwrap() < 1e-9, "{rep:?}");
    }
}

#[test]
fn kernel_vectors_correspond() {
    for seed in 0..10 {
        let (p, psi) = singular_pair(&mut rng(200 + seed), 8 + 2 * seed as usize).unwrap();
        assert!((&p.h * &psi).norm() < 1e-12);
        let f = smooth_feshbach(&p);
        let cpsi = &p.chi * &psi;
        assert!((&f * &cpsi).norm() / cpsi.norm() < 1e-9);
        let (q, _) = intertwiners(&p);
        assert!((&p.h * (&q * &cpsi)).norm() < 1e-9);
        let rep = check_isospectral(&p);
        assert!(rep.kernel_forward.unwrap() < 1e-9 && rep.kernel_backward.unwrap() < 1e-9, "{rep:?}");
    }
}

#[test]
fn hermitian_data_gives_hermitian_map() {
    let (p, _) = random_pair(&mut rng(7), 20).unwrap();
    let f = smooth_feshbach(&p);
    assert!(max_abs(&(&f - f.adjoint())) < 1e-13);
}

fn nested(seed: u64, dim: usize) -> (CMat, CMat, CMat, CMat, CMat) {
    let mut r = rng(seed);
    let s = Surrogate::random(&mut r, dim);
    let (c1, _) = cutoff_pair(0.45, 0.7);
    let (c2, _) = cutoff_pair(0.15, 0.3);
    let tau1 = s.function(|e| e + 0.25);
    let tau2 = s.function(|e| 0.8 * e + 0.2);
    let h = &tau1 + random_hermitian(&mut r, dim, 0.1);
    (h, tau2, s.function(&c1), s.function(&c2), tau1)
}

#[test]
fn composition_of_nested_cutoffs() {
    for (seed, dim) in [(30, 8), (31, 16), (32, 32)] {
        let (h, tau2, chi1, chi2, tau1) = nested(seed, dim);
        let rep = check_composition(&h, &tau2, &chi1, &chi2, &tau1).unwrap();
        assert!(rep.max_residual() < 1e-10, "{rep:?}");
        assert!(rep.aq.is_some());
    }
}

#[test]
fn composition_with_equal_cutoffs() {
    let (h, _, chi1, _, tau1) = nested(33, 12);
    let rep = check_composition(&h, &tau1, &chi1, &chi1, &tau1);
    // χ₁χ₁ ≠ χ₁ unless χ₁ is a projector.
    assert!(matches!(rep, Err(FeshbachError::Nesting(_))));
    let mut r = rng(34);
    let s = Surrogate::random(&mut r, 12);
    let proj = s.function(|e| if e < 0.5 { 1.0 } else { 0.0 });
    let tau = s.function(|e| e + 0.25);
    let h = &tau + random_hermitian(&mut r, 12, 0.1);
    let rep = check_composition(&h, &tau, &proj, &proj, &tau).unwrap();
    assert!(rep.max_residual() < 1e-10, "{rep:?}");
}

#[test]
fn nesting_violation_is_reported() {
    let (h, tau2, chi1, chi2, tau1) = nested(35, 10);
    assert!(matches!(
        check_composition(&h, &tau2, &chi2, &chi1, &tau1),
        Err(FeshbachError::Nesting(_))
    ));
}

#[test]
fn derivative_matches_finite_differences() {
    for seed in 0..4 {
        let mut r = rng(40 + seed);
        let (p, _) = random_pair(&mut r, 16).unwrap();
        let zero = CMat::zeros(16, 16);
        assert!(max_abs(&feshbach_derivative(&p, &zero).unwrap()) == 0.0);
        let v = random_hermitian(&mut r, 16, 1.0);
        let rep = check_derivative(&p, &v, &[1e-3, 5e-4, 2.5e-4]).unwrap();
        assert!(rep.f_order >= 1.8 && rep.q_order >= 1.8, "{rep:?}");
        assert!(rep.f_errors.iter().chain(&rep.q_errors).all(|&e| e < 1e-6), "{rep:?}");
    }
}

#[test]
fn singular_restricted_block_is_a_pair_violation() {
    let s = Surrogate::random(&mut rng(50), 8);
    let (ch, cb) = cutoff_pair(0.3, 0.6);
    let tau = s.function(|e| if e > 0.2 { 0.0 } else { 1.0 });
    let r = FeshbachPair::with_chibar(tau.clone(), tau, s.function(&ch), s.function(&cb));
    assert!(matches!(r, Err(FeshbachError::PairViolation(_))));
}

#[test]
fn cutoff_out_of_range_is_rejected() {
    let n = 4;
    let chi = CMat::identity(n, n) * c(1.5);
    let r = FeshbachPair::new(CMat::identity(n, n), CMat::identity(n, n), chi);
    assert!(matches!(r, Err(FeshbachError::Cutoff(_))));
}

#[test]
fn upsilon_is_identity_when_tau_equals_t() {
    let s = Surrogate::random(&mut rng(60), 16);
    let (ch, _) = cutoff_pair(0.3, 0.6);
    let t = s.function(|e| e * e + 0.1);
    let ups = overlap_upsilon(&t, &t, &s.function(&ch)).unwrap();
    assert_eq!(ups, CMat::identity(16, 16));
}

#[test]
fn upsilon_difference_identity() {
    for seed in 0..5 {
        let s = Surrogate::random(&mut rng(70 + seed), 24);
        let (ch, cb) = cutoff_pair(0.3, 0.6);
        let (chi, chibar) = (s.function(&ch), s.function(&cb));
        let (t1, tau1) = (s.function(|e| e + 0.3 * e * e), s.function(|e| 0.9 * e + 0.05));
        let (t2, tau2) = (s.function(|e| 1.1 * e + 0.02), s.function(|e| 0.95 * e + 0.04));
        let (u1, r1) = overlap::overlap_parts(&t1, &tau1, &chi, &chibar).unwrap();
        let (u2, r2) = overlap::overlap_parts(&t2, &tau2, &chi, &chibar).unwrap();
        let cb2 = &chibar * &chibar;
        let rhs = &cb2 * (&t2 - &t1) * &r2 * &u1 - &cb2 * (&tau2 - &tau1) * &t1 * &r1 * &r2;
        assert!(max_abs(&(u1 - u2 - rhs)) < 1e-10);
    }
}

#[test]
fn upsilon_matches_diagonal_closed_form() {
    let n = 20;
    let e: Vec<f64> = (0..n).map(|i| i as f64 / (n - 1) as f64).collect();
    let (ch, cb) = cutoff_pair(0.3, 0.6);
    let t: Vec<f64> = e.iter().map(|x| 1.3 * x + 0.1 * x * x).collect();
    let tau: Vec<f64> = e.iter().map(|x| x + 0.05).collect();
    let chi: Vec<f64> = e.iter().map(|&x| ch(x)).collect();
    let ups = overlap_upsilon(&diag(&t), &diag(&tau), &diag(&chi)).unwrap();
    for i in 0..n {
        let b = cb(e[i]);
        let expect = if b < 1e-6 { 1.0 } else { tau[i] / (tau[i] + b * b * (t[i] - tau[i])) };
        assert!((ups[(i, i)].re - expect).abs() < 1e-13, "{i}");
    }
    assert!(max_abs(&(ups.clone() - diag(&ups.diagonal().iter().map(|z| z.re).collect::<Vec<_>>()))) < 1e-15);
}

#[test]
fn upsilon_minus_one_is_supported_on_overlap() {
    let s = Surrogate::random(&mut rng(80), 16);
    let (ch, cb) = cutoff_pair(0.3, 0.6);
    let chi = s.function(&ch);
    let t = s.function(|e| 1.2 * e);
    let tau = s.function(|e| e + 0.01);
    let ups = overlap_upsilon(&t, &tau, &chi).unwrap();
    let outside = s.function(|e| if ch(e) * cb(e) == 0.0 && ch(e) > 0.0 { 1.0 } else { 0.0 });
    assert!(max_abs(&(&outside * (&ups - CMat::identity(16, 16)) * &outside)) < 1e-12);
}

#[test]
fn regrouped_formula_reproduces_feshbach_map() {
    for seed in 0..4 {
        let mut r = rng(90 + seed);
        let s = Surrogate::random(&mut r, 16);
        let (ch, _) = cutoff_pair(0.3, 0.6);
        let chi = s.function(&ch);
        let t = s.function(|e| 1.1 * e + 0.2);
        let tau = s.function(|e| e + 0.25);
        let w = random_hermitian(&mut r, 16, 0.1);
        let p = FeshbachPair::new(&t + &w, tau.clone(), chi.clone()).unwrap();
        let regrouped = regrouped_feshbach(&t, &w, &tau, &chi).unwrap();
        let direct = smooth_feshbach(&p);
        let outside = s.function(|e| if ch(e) > 0.0 { 0.0 } else { 1.0 });
        // The regrouped formula is stated on Ran χ; off it both equal τ.
        assert!(max_abs(&(&chi * (&regrouped - &direct) * &chi)) < 1e-12);
        assert!(max_abs(&(&outside * (&direct - &tau) * &outside)) < 1e-12);
    }
}
