//! Soft-photon sum rules: a photon of vanishing momentum along `n⃗` acts
//! like `√α μ ε(n⃗, λ)·∇_X` on the kernel one degree lower.
//!
//! Checked rules (the top-degree rule would need the discarded degree):
//! - degree 0–1: `√α μ ε·∇T(X) = lim w₀₁(X; x n⃗)`;
//! - degree 1–2: `√α μ ε·∇w₀₁(X; k) = lim w₁₁(X; x n⃗, k) = 2 lim w₀₂(X; k, x n⃗)`.

use crate::report::{CheckReport, Worst};
use model_seed::{dot_m, dot_v, Degree2, XPoint};
use pauli_kernels::{PauliValue, Polarization};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rg_map::KernelSequence;

/// Central-difference step for `∇_X`.
pub const GRADIENT_STEP: f64 = 1e-3;
/// Photon momenta used at degree 1–2.
const K_MAGS: [f64; 2] = [0.1, 0.2];
/// Spectral contents of the test points; kept below `3/4` where the
/// degree-0 data are not mixed with the `χ₁` boundary layer.
const X0S: [f64; 3] = [0.15, 0.35, 0.55];

#[derive(Clone, Debug)]
pub struct SumRuleReport {
    pub report: CheckReport,
    pub level01: f64,
    pub level12: f64,
}

/// Uniform random unit vectors from a seeded generator.
pub fn random_directions(n: usize, seed: u64) -> Vec<[f64; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let u: f64 = rng.random_range(-1.0..1.0);
            let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
            let s = (1.0 - u * u).sqrt();
            [s * phi.cos(), s * phi.sin(), u]
        })
        .collect()
}

fn angles(d: &[f64; 3]) -> (f64, f64) {
    (d[2].clamp(-1.0, 1.0).acos(), d[1].atan2(d[0]))
}

fn shift(x: &XPoint, e: &[f64; 3], h: f64) -> XPoint {
    XPoint::new(x.x0, [x.v[0] + h * e[0], x.v[1] + h * e[1], x.v[2] + h * e[2]])
}

/// `ε·∇_X f` by a three-point stencil.
fn gradient(f: impl Fn(&XPoint) -> PauliValue, x: &XPoint, e: &[f64; 3]) -> PauliValue {
    let h = GRADIENT_STEP;
    (f(&shift(x, e, h)) - f(&shift(x, e, -h))) * (0.5 / h)
}

/// Test points inside the forward cone: `X⃗` at a fraction of `X0` along
/// the given directions, plus the axis point.
fn points(dirs: &[[f64; 3]], x0_max: f64) -> Vec<XPoint> {
    let mut out = Vec::new();
    for &x0 in X0S.iter().filter(|&&x0| x0 <= x0_max) {
        out.push(XPoint::new(x0, [0.0; 3]));
        for d in dirs {
            let r = 0.5 * x0;
            out.push(XPoint::new(x0, d.map(|c| r * c)));
        }
    }
    out
}

/// Residuals of both rules at spectral parameter `0`, for `n_dirs`
/// seeded random directions and every polarization.
pub fn check_sum_rules(seq: &KernelSequence, n_dirs: usize, seed: u64, tol: f64) -> SumRuleReport {
    let src = seq.source();
    let sqrt_a = seq.cfg.alpha.sqrt();
    let mu = src.mu();
    let pm = src.polarization();
    let pols: Vec<Polarization> = (0..pm.count()).map(Polarization::from_index).collect();
    let dirs = random_directions(n_dirs, seed);
    let free = |x: &XPoint| src.free(0.0, x);
    let zero = [0.0; 3];

    let mut w01 = Worst::default();
    for x in points(&dirs, 0.75) {
        for n in &dirs {
            let (th, ph) = angles(n);
            for &l in &pols {
                let e = pm.vector(th, ph, l);
                let lhs = gradient(free, &x, &e) * (sqrt_a * mu);
                let rhs = dot_v(&e, &src.v01(&x, &zero));
                w01.push((lhs - rhs).frobenius(), || format!("deg 0-1 X={:?} n={n:?} {l:?}", (x.x0, x.v)));
            }
        }
    }

    let mut w12 = Worst::default();
    for x in points(&dirs, 0.75 - K_MAGS[1]) {
        for (i, n) in dirs.iter().enumerate() {
            let (th, ph) = angles(n);
            // Photon momenta: fixed magnitudes along the neighbouring direction.
            let kd = dirs[(i + 1) % dirs.len()];
            let (kth, kph) = angles(&kd);
            for kmag in K_MAGS {
                let k = kd.map(|c| kmag * c);
                for &l in &pols {
                    let e = pm.vector(th, ph, l);
                    for &l2 in &pols {
                        let e2 = pm.vector(kth, kph, l2);
                        let lhs = gradient(|y| dot_v(&e2, &src.v01(y, &k)), &x, &e) * (sqrt_a * mu);
                        let r11 = dot_m(&e, &src.w2(Degree2::D11, &x, &zero, &k), &e2);
                        let r02 = dot_m(&e2, &src.w2(Degree2::D02, &x, &k, &zero), &e) * 2.0;
                        let res = (lhs - r11).frobenius().max((lhs - r02).frobenius());
                        w12.push(res, || format!("deg 1-2 X={:?} n={n:?} k={k:?} {l:?}/{l2:?}", (x.x0, x.v)));
                    }
                }
            }
        }
    }

    let (level01, level12) = (w01.value, w12.value);
    let mut witnesses = Vec::new();
    let (first, second) = if level01 >= level12 { (w01, w12) } else { (w12, w01) };
    witnesses.extend(first.at);
    witnesses.extend(second.at);
    let mut report = CheckReport::new("soft-photon sum rules", level01.max(level12), tol, witnesses);
    report.rng_seed = Some(seed);
    SumRuleReport { report, level01, level12 }
}
