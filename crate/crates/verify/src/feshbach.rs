//! Randomized suite over the dense Feshbach identities: isospectrality and
//! intertwining, inverse formulas, kernel correspondence, composition of
//! nested cutoffs, the derivative formula, and the overlap operator.

use crate::report::{CheckReport, Worst};
use feshbach_core::random::{cutoff_pair, random_hermitian, random_pair, singular_pair, Surrogate};
use feshbach_core::{check_composition_exact, check_derivative, check_isospectral, max_abs, overlap, CMat, FeshbachError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Step sizes of the derivative check.
pub const DERIVATIVE_STEPS: [f64; 3] = [1e-3, 5e-4, 2.5e-4];
/// Least acceptable observed convergence order of the derivative check.
pub const MIN_ORDER: f64 = 1.8;

#[derive(Clone, Debug)]
pub struct FeshbachSuite {
    pub isospectral: CheckReport,
    pub composition: CheckReport,
    /// `max(0, 1.8 − observed order)` over all trials.
    pub derivative_order: CheckReport,
    pub min_order: f64,
    /// `Υ − 1` for `τ = T`; exact zero expected.
    pub upsilon_identity: CheckReport,
    pub upsilon_difference: CheckReport,
    pub trials: usize,
}

impl FeshbachSuite {
    pub fn reports(&self) -> [&CheckReport; 5] {
        [
            &self.isospectral,
            &self.composition,
            &self.derivative_order,
            &self.upsilon_identity,
            &self.upsilon_difference,
        ]
    }

    pub fn pass(&self) -> bool {
        self.reports().iter().all(|r| r.pass)
    }
}

/// `trials` random pairs with dimensions drawn uniformly from `dims`.
pub fn feshbach_suite(
    dims: std::ops::RangeInclusive<usize>,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<FeshbachSuite, FeshbachError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut iso, mut comp, mut order, mut uid, mut udiff) =
        (Worst::default(), Worst::default(), Worst::default(), Worst::default(), Worst::default());
    let mut min_order = f64::INFINITY;
    for t in 0..trials {
        let dim = rng.random_range(dims.clone());
        let tag = |what: &str| format!("trial {t} dim {dim} {what}");

        let (p, s) = random_pair(&mut rng, dim)?;
        let rep = check_isospectral(&p);
        let r = if rep.equivalence { rep.max_residual() } else { f64::INFINITY };
        iso.push(r, || tag("regular pair"));
        let (ps, _) = singular_pair(&mut rng, dim)?;
        let rep = check_isospectral(&ps);
        let r = if rep.equivalence { rep.max_residual() } else { f64::INFINITY };
        iso.push(r, || tag("singular pair"));

        let v = random_hermitian(&mut rng, dim, 1.0);
        let d = check_derivative(&p, &v, &DERIVATIVE_STEPS)?;
        let o = d.f_order.min(d.q_order);
        min_order = min_order.min(o);
        order.push((MIN_ORDER - o).max(0.0), || tag(&format!("order {o:.3}")));

        let (c1, cb1) = cutoff_pair(0.45, 0.7);
        let (c2, cb2) = cutoff_pair(0.15, 0.3);
        let tau1 = s.function(|e| e + 0.25);
        let tau2 = s.function(|e| 0.8 * e + 0.2);
        let h = &tau1 + random_hermitian(&mut rng, dim, 0.1);
        let (chi1, chibar1) = (s.function(&c1), s.function(&cb1));
        let (chi2, chibar2) = (s.function(&c2), s.function(&cb2));
        let rep = check_composition_exact(&h, &tau2, (&chi1, &chibar1), (&chi2, &chibar2), &tau1)?;
        comp.push(rep.max_residual(), || tag("nested cutoffs"));

        let (u, ud) = upsilon_checks(&mut rng, dim)?;
        uid.push(u, || tag("tau = T"));
        udiff.push(ud, || tag("difference identity"));
    }
    let rep = |name: &str, w: Worst, tol: f64| {
        let mut r = CheckReport::new(name, w.value, tol, w.at.into_iter().collect());
        r.rng_seed = Some(seed);
        r
    };
    Ok(FeshbachSuite {
        isospectral: rep("feshbach isospectrality and inverse formulas", iso, tol),
        composition: rep("feshbach composition", comp, tol),
        derivative_order: rep("feshbach derivative order deficit", order, 0.0),
        min_order,
        upsilon_identity: rep("overlap operator with tau = T", uid, 0.0),
        upsilon_difference: rep("overlap operator difference identity", udiff, 1e-10),
        trials,
    })
}

fn upsilon_checks(rng: &mut ChaCha8Rng, dim: usize) -> Result<(f64, f64), FeshbachError> {
    let s = Surrogate::random(rng, dim);
    let (ch, cb) = cutoff_pair(0.3, 0.6);
    let (chi, chibar) = (s.function(&ch), s.function(&cb));
    let a: f64 = rng.random_range(0.1..0.5);
    let t = s.function(|e| e + a * e * e + 0.1);
    let (ups, _) = overlap::overlap_parts(&t, &t, &chi, &chibar)?;
    let identity = max_abs(&(ups - CMat::identity(dim, dim)));

    let (t1, tau1) = (s.function(|e| e + a * e * e), s.function(|e| 0.9 * e + 0.05));
    let (t2, tau2) = (s.function(|e| 1.1 * e + 0.02), s.function(|e| 0.95 * e + 0.04));
    let (u1, r1) = overlap::overlap_parts(&t1, &tau1, &chi, &chibar)?;
    let (u2, r2) = overlap::overlap_parts(&t2, &tau2, &chi, &chibar)?;
    let cb2 = &chibar * &chibar;
    let rhs = &cb2 * (&t2 - &t1) * &r2 * &u1 - &cb2 * (&tau2 - &tau1) * &t1 * &r1 * &r2;
    Ok((identity, max_abs(&(u1 - u2 - rhs))))
}
