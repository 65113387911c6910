use model_seed::{chi1, chi_rho, seed_kernels, ModelConfig, XPoint};
use pauli_kernels::{PhotonAxes, WickKernel, XAxes, Axis, PauliValue};
use rg_map::level::StepCtx;
use rg_map::quad::Rules;
use rg_map::wick::{vacuum_term, Factor};
use rg_map::*;
use std::sync::Arc;

fn seq(p: f64, alpha: f64, sigma0: f64) -> KernelSequence {
    let seed = seed_kernels(&ModelConfig::qed(p, alpha, sigma0)).unwrap();
    KernelSequence::from_seed(seed, RgParams::default()).unwrap()
}

fn probe(c: f64) -> (KernelSequence, StepCtx) {
    let params = RgParams::default();
    let s = KernelSequence::at_scale(
        Arc::new(ConstantSource { c }),
        ModelConfig::nelson(0.0, 0.0, 1e-6),
        params.clone(),
        1,
    )
    .unwrap();
    let ctx = StepCtx {
        prev: s.level.clone(),
        rho_c: params.rho,
        rules: Arc::new(Rules::new(&params.quad)),
        floor: params.floor,
    };
    (s, ctx)
}

/// Adaptive Simpson, used as an independent oracle.
fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn rec(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
            return left + right + (left + right - whole) / 15.0;
        }
        rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    rec(f, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, 40)
}

#[test]
fn constant_kernel_matches_radial_oracle() {
    let c = 0.3;
    let (s, ctx) = probe(c);
    let rho = s.params.rho;
    let chain = s.level.freeze(0.0);
    let got = delta00(&ctx, &chain, 1.0, &XPoint::ORIGIN).w0.re;
    // F(k) = χ₁²χ̄_ρ²/k for T = X0, r = 0, α = 1; angular sum gives 4π.
    let f = |k: f64| {
        let cr = chi_rho(k, rho);
        chi1(k).powi(2) * (1.0 - cr * cr)
    };
    let mut oracle = 0.0;
    for (a, b) in [(0.75 * rho, rho), (rho, 0.5), (0.5, 0.75), (0.75, 1.0)] {
        oracle += simpson(&f, a, b, 1e-14);
    }
    oracle *= -4.0 * std::f64::consts::PI * c * c;
    assert!((got - oracle).abs() < 1e-6 * oracle.abs(), "{got} vs {oracle}");
}

#[test]
fn fast_path_matches_generic_engine() {
    let s = seq(0.1, 1e-3, 1e-3);
    let ctx = StepCtx {
        prev: s.level.clone(),
        rho_c: 1.0,
        rules: Arc::new(Rules::new(&s.params.quad)),
        floor: s.params.floor,
    };
    let chain = s.level.freeze(0.0);
    // Same panels at the origin; elsewhere the generic engine does not
    // split at the content-dependent kinks.
    for (y, tol) in [(XPoint::ORIGIN, 1e-12), (XPoint::new(0.3, [0.1, 0.0, -0.2]), 1e-4)] {
        let fast = delta00(&ctx, &chain, 1.0, &y);
        let generic = vacuum_term(&ctx, &chain, 1.0, &y, &[Factor::W01, Factor::W10], &ctx.rules.single);
        assert!((fast - generic).frobenius() < tol * fast.frobenius(), "{fast:?} {generic:?}");
    }
}

#[test]
fn free_theory_is_a_fixed_point() {
    let mut s = first_decimation(&seq(0.2, 0.0, 1e-3)).unwrap();
    let rho = s.params.rho;
    for n in 1..=12 {
        let prev = s.clone();
        s = rg_step(&s).unwrap();
        let st = s.step().unwrap();
        assert_eq!(st.alpha_center, 1.0);
        assert_eq!(st.report.correction2, 0.0);
        assert_eq!(s.beta(0.0), -0.2);
        assert_eq!(s.lambda, lambda_at(0.5, rho, n));
        assert_eq!(s.sigma, sigma_at(1e-3, rho, n));
        for r in [-0.01, -0.003, 0.0, 0.007] {
            let fwd = spectral_map(&s, r * rho, Direction::Forward).unwrap();
            assert!((fwd - r).abs() < 1e-15, "{fwd} vs {r}");
        }
        let x = XPoint::new(0.5, [0.1, 0.2, -0.3]);
        assert_eq!(prev.source().v01(&x, &[0.1, 0.0, 0.0]), model_seed::ZERO_V);
    }
    let m = materialize(&s, &NormGrid::new(2)).unwrap();
    assert!(m.degree1().iter().chain(m.degree2().iter()).all(|k| k.values.iter().all(|v| *v == PauliValue::ZERO)));
    let d = free_deviation(&s, 0.0, &NormGrid::new(2).x0).unwrap();
    assert!(d < 1e-12, "free part deviates by {d}");
}

#[test]
fn alpha_is_one_without_interaction() {
    let a = solve_alpha(&seq(0.1, 0.0, 1e-3), 0.0).unwrap();
    assert_eq!(a.alpha, 1.0);
}

#[test]
fn alpha_iteration_contracts() {
    let s = first_decimation(&seq(0.1, 1e-4, 1e-6)).unwrap();
    let a = solve_alpha(&s, 0.0).unwrap();
    assert!((a.alpha - 1.0).abs() < 1e-2);
    assert!(a.derivative.unwrap() < 1.0);
}

#[test]
fn spectral_round_trip_on_interval() {
    let mut s = first_decimation(&seq(0.1, 1e-4, 1e-6)).unwrap();
    s = rg_step(&s).unwrap();
    let st = s.step().unwrap();
    assert!(st.report.roundtrip < 1e-12);
    for i in 0..=40 {
        let t = -0.01 + 0.02 * i as f64 / 40.0;
        let r = spectral_map(&s, t, Direction::Inverse).unwrap();
        let back = spectral_map(&s, r, Direction::Forward).unwrap();
        assert!((back - t).abs() < 1e-12);
    }
    let (lo, hi) = (st.jmap.a, st.jmap.b);
    assert!(spectral_map(&s, hi + 1e-3, Direction::Forward).is_err());
    assert!(spectral_map(&s, lo - 1e-3, Direction::Forward).is_err());
    assert!(st.report.derivative_defect <= 2.0 * 0.1);
}

#[test]
fn seed_has_no_spectral_map() {
    assert!(matches!(spectral_map(&seq(0.1, 1e-4, 1e-3), 0.0, Direction::Forward), Err(RgError::Spectral(_))));
    assert!(rg_step(&seq(0.1, 1e-4, 1e-3)).is_err());
}

#[test]
fn zero_momentum_keeps_beta_zero() {
    let mut s = first_decimation(&seq(0.0, 1e-4, 1e-6)).unwrap();
    for _ in 0..2 {
        s = rg_step(&s).unwrap();
    }
    assert!(s.beta(0.0).abs() < 1e-12, "beta = {}", s.beta(0.0));
}

fn monomial(m: usize, n: usize) -> WickKernel {
    let slot = PhotonAxes {
        kmag: Axis::new(vec![0.0, 0.25, 0.5, 1.0]),
        ktheta: Axis::new(vec![0.0, 1.0]),
        kphi: Axis::single(0.0),
        npol: 1,
    };
    let x = XAxes {
        x0: Axis::new(vec![0.0, 0.5, 1.0]),
        xpar: Axis::new(vec![-1.0, 0.0, 1.0]),
        xperp: Axis::new(vec![0.0, 1.0]),
    };
    WickKernel::from_fn(m, n, x, vec![slot; m + n], |p, args| {
        let k: f64 = args.iter().map(|a| a.kmag).sum();
        PauliValue::scalar((0.25 + p.x0 + 0.5 * p.xpar + k).into())
    })
    .unwrap()
}

#[test]
fn rescale_prefactors() {
    let (rho, alpha) = (0.01, 1.02);
    for (m, n) in [(0, 1), (1, 0), (1, 1), (0, 2)] {
        let w = monomial(m, n);
        for sigma in [0.5, 2.0] {
            let out = rescale(&w, rho, alpha, sigma).unwrap();
            let d = (m + n) as i32;
            let e = if sigma <= 1.0 { d - 1 } else { 2 * d - 1 };
            let expected = rho.powi(e) / alpha;
            let base = WickKernel::from_fn(m, n, w.x.clone(), w.slots.clone(), |p, args| {
                let k: f64 = args.iter().map(|a| a.kmag).sum();
                PauliValue::scalar((0.25 + rho * (p.x0 + 0.5 * p.xpar + k)).into())
            })
            .unwrap();
            for (o, b) in out.values.iter().zip(&base.values) {
                assert!((o.w0.re / b.w0.re - expected).abs() < 1e-8 * expected);
            }
        }
    }
}
