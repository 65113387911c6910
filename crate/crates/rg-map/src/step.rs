//! One application of the renormalization map, and the first decimation.

use crate::cheb::Cheb;
use crate::level::{Chain, Contraction, Grid3, LevelRef, StepCtx, StepLevel, StepReport};
use crate::quad::Rules;
use crate::wick::{delta00, vacuum_term, PAIR_TERMS_L2, PAIR_TERMS_L3};
use crate::{KernelSequence, RgError, RgParams};
use model_seed::XPoint;
use roots::{find_root_brent, SimpleConvergency};
use std::sync::Arc;

/// Solution of `α = 1 + ∂_{X0} Δw̃₀₀(r; 0)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlphaSolution {
    pub alpha: f64,
    pub iterations: usize,
    /// `|∂_α(rhs)|` at the solution, when measured.
    pub derivative: Option<f64>,
}

struct Engine<'a> {
    ctx: &'a StepCtx,
    params: &'a RgParams,
}

impl Engine<'_> {
    fn delta(&self, chain: &[crate::level::Link], a: f64, y: &XPoint) -> Result<f64, RgError> {
        let v = delta00(self.ctx, chain, a, y).w0.re;
        if v.is_nan() {
            return Err(RgError::Feshbach("resolvent denominator below floor".into()));
        }
        Ok(v)
    }

    fn g0(&self, chain: &Chain, a: f64) -> Result<f64, RgError> {
        let h = self.params.fd_step;
        let p = self.delta(chain, a, &XPoint::new(h, [0.0; 3]))?;
        let m = self.delta(chain, a, &XPoint::new(-h, [0.0; 3]))?;
        Ok((p - m) / (2.0 * h))
    }

    fn gpar(&self, chain: &Chain, a: f64) -> Result<f64, RgError> {
        let h = self.params.fd_step;
        let p = self.delta(chain, a, &XPoint::new(0.0, [0.0, 0.0, h]))?;
        let m = self.delta(chain, a, &XPoint::new(0.0, [0.0, 0.0, -h]))?;
        Ok((p - m) / (2.0 * h))
    }

    fn alpha(&self, chain: &Chain, a0: f64, measure: bool) -> Result<AlphaSolution, RgError> {
        let p = self.params;
        let mut a = a0;
        let mut last = f64::INFINITY;
        for it in 1..=200 {
            let step = 1.0 + self.g0(chain, a)? - a;
            if step.abs() <= p.alpha_tol {
                if (a - 1.0).abs() > p.alpha_window {
                    return Err(RgError::Polydisc(format!("|alpha - 1| = {:.3e}", (a - 1.0).abs())));
                }
                let derivative = if measure {
                    let d = 1e-3;
                    Some(((self.g0(chain, a + d)? - self.g0(chain, a - d)?) / (2.0 * d)).abs())
                } else {
                    None
                };
                if derivative.is_some_and(|d| d >= 1.0) {
                    return Err(RgError::Polydisc("alpha iteration is not a contraction".into()));
                }
                return Ok(AlphaSolution {
                    alpha: a,
                    iterations: it,
                    derivative,
                });
            }
            if it > 2 && step.abs() >= last {
                return Err(RgError::Polydisc("alpha iteration does not contract".into()));
            }
            last = step.abs();
            a += p.alpha_damping * step;
        }
        Err(RgError::Polydisc("alpha iteration did not converge".into()))
    }

    /// Two-contraction terms at the center, split by order.
    fn pair_terms(&self, chain: &Chain, a: f64) -> (f64, f64) {
        if self.params.mn_max < 2 {
            return (0.0, 0.0);
        }
        let rule = &self.ctx.rules.pair;
        let sum = |terms: &[&[crate::wick::Factor]]| -> f64 {
            terms
                .iter()
                .map(|t| vacuum_term(self.ctx, chain, a, &XPoint::ORIGIN, t, rule).w0.re)
                .sum()
        };
        (sum(PAIR_TERMS_L2), sum(PAIR_TERMS_L3))
    }
}

/// Scale-dependent constants of a step.
struct Plan {
    n: usize,
    rho_c: f64,
    dil: f64,
    sigma: f64,
    mu: f64,
    lambda: f64,
    contraction: Contraction,
    /// Prefactors of degree 1 and 2 before the `1/α`.
    g1: f64,
    g2: f64,
}

fn build(prev: &KernelSequence, plan: Plan) -> Result<StepLevel, RgError> {
    let params = &prev.params;
    let ctx = StepCtx {
        prev: prev.level.clone(),
        rho_c: plan.rho_c,
        rules: Arc::new(Rules::new(&params.quad)),
        floor: params.floor,
    };
    let eng = Engine { ctx: &ctx, params };
    let src = ctx.prev.source();
    let zero = src.coupling() == 0.0;

    // Center c = J^{-1}(0) and α there.
    let mut r = 0.0;
    let mut a = 1.0;
    let mut corr = 0.0;
    let mut series = [0.0; 2];
    let mut sol = None;
    for pass in 0..2 {
        for _ in 0..100 {
            let chain = ctx.prev.freeze(r);
            let s = eng.alpha(&chain, a, false)?;
            a = s.alpha;
            let r_new = -(eng.delta(&chain, a, &XPoint::ORIGIN)? + corr);
            let done = (r_new - r).abs() <= 1e-15 * (1.0 + r.abs());
            r = r_new;
            if done {
                break;
            }
        }
        let chain = ctx.prev.freeze(r);
        if pass == 0 && !zero {
            let (l2, l3) = eng.pair_terms(&chain, a);
            let fast = eng.delta(&chain, a, &XPoint::ORIGIN)?;
            series = [fast + l2, l3];
            corr = l2 + if params.l_max >= 3 { l3 } else { 0.0 };
        } else {
            sol = Some(eng.alpha(&chain, a, true)?);
            break;
        }
    }
    let sol = sol.unwrap();
    let (center, alpha_c) = (r, sol.alpha);
    let scale_label = plan.n as i64;
    let kept = (series[0] + series[1]).abs();
    let tail = if series[1] == 0.0 || kept == 0.0 {
        0.0
    } else if params.l_max >= 3 {
        series[1] * series[1] / series[0].abs().max(f64::MIN_POSITIVE) / kept
    } else {
        series[1].abs() / series[0].abs().max(f64::MIN_POSITIVE)
    };
    if tail > params.tail_tol {
        return Err(RgError::TailBudget {
            scale: scale_label,
            tail,
            budget: params.tail_tol,
        });
    }

    // Chebyshev data on V' = [c - w, c + w].
    let w = 1.2 * alpha_c * plan.dil * params.r_half;
    let (lo, hi) = (center - w, center + w);
    let nodes = Cheb::nodes(lo, hi, params.r_nodes);
    let mut vals = [vec![], vec![], vec![], vec![], vec![], vec![]];
    for &rj in &nodes {
        let chain = ctx.prev.freeze(rj);
        let aj = eng.alpha(&chain, alpha_c, false)?.alpha;
        let v = eng.delta(&chain, aj, &XPoint::ORIGIN)? + corr;
        let gp = eng.gpar(&chain, aj)?;
        vals[0].push(aj);
        vals[1].push(v);
        vals[2].push(aj - 1.0);
        vals[3].push(gp);
        vals[4].push((rj + v) / (aj * plan.dil));
        vals[5].push((src.beta(rj) + gp) / aj);
    }
    let fit = |v: &[f64]| Cheb::from_values(lo, hi, v);
    let alpha = fit(&vals[0]);
    let taylor = [fit(&vals[1]), fit(&vals[2]), fit(&vals[3])];
    let jmap = fit(&vals[4]);
    let beta = fit(&vals[5]);
    let (jlo, jhi) = (jmap.eval(lo), jmap.eval(hi));
    if !(jlo < -params.r_half && jhi > params.r_half) {
        return Err(RgError::Spectral(format!(
            "J(V') = [{jlo:.3e}, {jhi:.3e}] does not cover the spectral interval"
        )));
    }
    let invert = |t: f64| -> Result<f64, RgError> {
        let mut conv = SimpleConvergency { eps: 1e-16, max_iter: 200 };
        find_root_brent(lo, hi, |x| jmap.eval(x) - t, &mut conv)
            .map_err(|e| RgError::Spectral(format!("inverse bracket failure: {e}")))
    };
    let jnodes = Cheb::nodes(jlo, jhi, params.r_nodes);
    let jvals = jnodes.iter().map(|&t| invert(t)).collect::<Result<Vec<_>, _>>()?;
    let jinv = Cheb::from_values(jlo, jhi, &jvals);
    let mut roundtrip = 0.0f64;
    for i in 0..=20 {
        let t = -params.r_half + 2.0 * params.r_half * i as f64 / 20.0;
        roundtrip = roundtrip.max((jmap.eval(jinv.eval(t)) - t).abs());
    }
    let derivative_defect = nodes
        .iter()
        .zip(&vals[0])
        .map(|(&rj, &aj)| (jmap.derivative(rj) * aj * plan.dil - 1.0).abs())
        .fold(0.0, f64::max);

    // Residual of the degree-0 correction beyond its Taylor part, at c.
    let chain_c = ctx.prev.freeze(center);
    let [nb0, nb1, nb2] = params.bulk;
    let mut residual = Grid3::zeros([nb0, nb1, nb2], [0.0, -1.0, 0.0], [1.0, 1.0, 1.0]);
    if !zero {
        let (tv, tg0, tgp) = (taylor[0].eval(center), taylor[1].eval(center), taylor[2].eval(center));
        for i0 in 0..nb0 {
            for i1 in 0..nb1 {
                for i2 in 0..nb2 {
                    let x = XPoint::new(residual.node(0, i0), [residual.node(2, i2), 0.0, residual.node(1, i1)]);
                    let y = x.scaled(plan.dil);
                    let mut d = delta00(&ctx, &chain_c, alpha_c, &y);
                    if d.w0.re.is_nan() {
                        return Err(RgError::Feshbach("resolvent denominator below floor".into()));
                    }
                    d.w0 += corr - (tv + tg0 * y.x0 + tgp * y.v[2]);
                    let k = residual.index([i0, i1, i2]);
                    residual.values[k] = d;
                }
            }
        }
    }

    let c_theta = (1..=64)
        .map(|i| {
            let y0 = i as f64 / 64.0 * 1.5 * plan.rho_c.max(1.0).min(1.0);
            plan.rho_c * ctx.finner(&chain_c, alpha_c, &XPoint::new(y0, [0.0; 3])).abs()
        })
        .fold(0.0, f64::max);

    let vchain = chain_c.clone();
    Ok(StepLevel {
        n: plan.n,
        dil: plan.dil,
        sigma: plan.sigma,
        mu: plan.mu,
        lambda: plan.lambda,
        contraction: plan.contraction,
        f1: plan.g1 / alpha_c,
        f2: plan.g2 / alpha_c,
        center,
        alpha_center: alpha_c,
        vchain,
        alpha,
        jmap,
        jinv,
        taylor,
        beta,
        residual,
        report: StepReport {
            center,
            alpha_center: alpha_c,
            alpha_derivative: sol.derivative.unwrap_or(0.0),
            alpha_iterations: sol.iterations,
            correction2: corr,
            series,
            tail,
            c_theta,
            roundtrip,
            derivative_defect,
        },
        zero,
        ctx,
    })
}

/// `σ_n = ρ^{-n} σ₀`, in the form used throughout.
pub fn sigma_at(sigma0: f64, rho: f64, n: usize) -> f64 {
    sigma0 / rho.powi(n as i32)
}

/// `λ_n = ρⁿ λ₀`.
pub fn lambda_at(lambda0: f64, rho: f64, n: usize) -> f64 {
    lambda0 * rho.powi(n as i32)
}

/// First `n` with `σ_n > 1`.
pub fn crossing_index(sigma0: f64, rho: f64) -> usize {
    (0..).find(|&n| sigma_at(sigma0, rho, n) > 1.0).unwrap()
}

fn contraction_for(seq: &KernelSequence, n: usize) -> (Contraction, f64) {
    let (s0, rho, k) = (seq.cfg.sigma0, seq.params.rho, seq.cfg.kexp);
    let sigma = sigma_at(s0, rho, n);
    if sigma <= 1.0 {
        (
            Contraction::Kappa {
                sigma0: s0,
                kexp: k,
                scale: rho.powi(n as i32),
            },
            1.0,
        )
    } else {
        let sigma_c = sigma_at(s0, rho, crossing_index(s0, rho));
        (Contraction::Absorbed { sigma_c, kexp: k }, sigma_c / sigma)
    }
}

/// Feshbach decimation of the seed from the band `[3/4, ∞)` with
/// `τ = α H_f`, `χ = χ₁(H_f)`; produces scale 0.
pub fn first_decimation(seed: &KernelSequence) -> Result<KernelSequence, RgError> {
    if seed.scale.is_some() {
        return Err(RgError::Unsupported("first_decimation expects the seed".into()));
    }
    let (contraction, mu) = contraction_for(seed, 0);
    let plan = Plan {
        n: 0,
        rho_c: 1.0,
        dil: 1.0,
        sigma: seed.cfg.sigma0,
        mu,
        lambda: seed.params.lambda0,
        contraction,
        g1: 1.0,
        g2: 1.0,
    };
    let level = build(seed, plan)?;
    Ok(seed.child(level))
}

/// `R_ρ`: decimation with `χ_ρ`, rescaling by `ρ`, rebasing of `r`.
pub fn rg_step(seq: &KernelSequence) -> Result<KernelSequence, RgError> {
    let Some(n) = seq.scale else {
        return Err(RgError::Unsupported("rg_step needs a scale >= 0; run first_decimation".into()));
    };
    let p = &seq.params;
    let rho = p.rho;
    let (contraction, mu) = contraction_for(seq, n + 1);
    let k = seq.cfg.kexp as i32;
    let (g1, g2) = if seq.sigma <= 1.0 {
        (1.0, rho)
    } else {
        (rho.powi(k), rho.powi(2 * k + 1))
    };
    let plan = Plan {
        n: n + 1,
        rho_c: rho,
        dil: rho,
        sigma: sigma_at(seq.cfg.sigma0, rho, n + 1),
        mu,
        lambda: lambda_at(p.lambda0, rho, n + 1),
        contraction,
        g1,
        g2: if p.mn_max >= 2 { g2 } else { 0.0 },
    };
    let level = build(seq, plan)?;
    Ok(seq.child(level))
}

/// `α[r]` for the step leaving `seq`, at spectral parameter `r` of `seq`.
pub fn solve_alpha(seq: &KernelSequence, r: f64) -> Result<AlphaSolution, RgError> {
    let p = &seq.params;
    let rho_c = if seq.scale.is_some() { p.rho } else { 1.0 };
    let ctx = StepCtx {
        prev: seq.level.clone(),
        rho_c,
        rules: Arc::new(Rules::new(&p.quad)),
        floor: p.floor,
    };
    let eng = Engine { ctx: &ctx, params: p };
    eng.alpha(&seq.level.freeze(r), 1.0, true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// `J(r) = (αρ)^{-1} E[r]` of the step that produced `seq` (forward), or
/// its inverse by bracketed root finding.
pub fn spectral_map(seq: &KernelSequence, r: f64, direction: Direction) -> Result<f64, RgError> {
    let LevelRef::Step(s) = &seq.level else {
        return Err(RgError::Spectral("the seed has no spectral map".into()));
    };
    let (lo, hi) = (s.jmap.a, s.jmap.b);
    match direction {
        Direction::Forward => {
            if !(r >= lo && r <= hi) {
                return Err(RgError::Spectral(format!("r = {r:.6e} outside U = [{lo:.6e}, {hi:.6e}]")));
            }
            Ok(s.jmap.eval(r))
        }
        Direction::Inverse => {
            let mut conv = SimpleConvergency { eps: 1e-17, max_iter: 300 };
            find_root_brent(lo, hi, |x| s.jmap.eval(x) - r, &mut conv)
                .map_err(|e| RgError::Spectral(format!("inverse bracket failure at {r:.6e}: {e}")))
        }
    }
}

