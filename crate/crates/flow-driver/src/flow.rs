//! `seed → first decimation → n_scales` renormalization steps.

use crate::FlowError;
use model_seed::{nelson_seed_kernels, seed_kernels, ModelConfig, ModelKind};
use rg_map::{
    first_decimation, measure_polydisc, rg_step, Cheb, KernelSequence, NormGrid, PolydiscParams, RgParams,
};

#[derive(Clone, Debug, PartialEq)]
pub struct FlowConfig {
    pub model: ModelConfig,
    pub rg: RgParams,
    pub n_scales: usize,
    /// Measure polydisc parameters at every scale.
    pub measure: bool,
    /// Radii above which the flow is aborted as having left the polydisc.
    pub max_radius: f64,
}

impl FlowConfig {
    pub fn new(model: ModelConfig, n_scales: usize) -> Self {
        Self {
            model,
            rg: RgParams::default(),
            n_scales,
            measure: true,
            max_radius: 10.0,
        }
    }
}

/// One scale of a flow.
#[derive(Clone)]
pub struct RGState {
    pub scale_n: usize,
    pub seq: KernelSequence,
    pub params: PolydiscParams,
    /// `α` of the step that produced this scale, on its Chebyshev nodes.
    pub alpha_n: Vec<f64>,
    pub sigma_n: f64,
    pub lambda_n: f64,
}

/// Serializable summary of one scale.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaleRecord {
    pub n: usize,
    pub sigma_n: f64,
    pub lambda_n: f64,
    pub alpha_n_at_0: f64,
    /// `E` at the center of `I`; zero by the rebasing convention.
    pub e_at_0: f64,
    pub beta_n: f64,
    pub eps_meas: f64,
    pub delta_meas: f64,
    pub eta_meas: f64,
    pub tail_budget: f64,
    /// Spectral parameter of the previous scale mapped to 0.
    pub center: f64,
    pub c_theta: f64,
}

#[derive(Clone)]
pub struct RGTrace {
    pub model: ModelConfig,
    pub rg: RgParams,
    pub states: Vec<RGState>,
    pub records: Vec<ScaleRecord>,
}

impl RGTrace {
    pub fn last(&self) -> &RGState {
        self.states.last().expect("a trace holds at least scale 0")
    }

    pub fn state(&self, n: usize) -> Option<&RGState> {
        self.states.get(n)
    }
}

/// `N(σ₀) = ⌈log(1/σ₀)/log(1/ρ)⌉`.
pub fn crossing_scale(sigma0: f64, rho: f64) -> usize {
    ((1.0 / sigma0).ln() / (1.0 / rho).ln() - 1e-9).ceil().max(0.0) as usize
}

fn seed(cfg: &FlowConfig, momentum: f64) -> Result<KernelSequence, FlowError> {
    let s = match cfg.model.model {
        ModelKind::Qed => seed_kernels(&cfg.model)?,
        ModelKind::Nelson => nelson_seed_kernels(&cfg.model)?,
    };
    Ok(KernelSequence::from_seed(s.with_signed_momentum(momentum), cfg.rg.clone())?)
}

fn state(cfg: &FlowConfig, seq: KernelSequence, grid: &NormGrid) -> Result<RGState, FlowError> {
    let n = seq.scale.expect("renormalized scale");
    let params = if cfg.measure {
        measure_polydisc(&seq, 0.0, grid).map_err(|e| FlowError::Step {
            scale: n as i64,
            source: e,
        })?
    } else {
        PolydiscParams {
            lambda: seq.lambda,
            sigma: seq.sigma,
            rho: cfg.rg.rho,
            xi: cfg.rg.xi,
            ..Default::default()
        }
    };
    for (name, v) in [("eps", params.eps), ("delta", params.delta), ("eta", params.eta)] {
        if !(v.is_finite() && v <= cfg.max_radius) {
            return Err(FlowError::Polydisc {
                scale: n,
                reason: format!("{name} = {v:.3e} exceeds {:.1e}", cfg.max_radius),
            });
        }
    }
    if !(0.0..=0.5).contains(&params.lambda) {
        return Err(FlowError::Polydisc {
            scale: n,
            reason: format!("lambda = {} outside [0, 1/2]", params.lambda),
        });
    }
    let st = seq.step().expect("renormalized scale");
    let alpha_n = Cheb::nodes(st.alpha.a, st.alpha.b, cfg.rg.r_nodes)
        .into_iter()
        .map(|r| st.alpha.eval(r))
        .collect();
    Ok(RGState {
        scale_n: n,
        params,
        alpha_n,
        sigma_n: seq.sigma,
        lambda_n: seq.lambda,
        seq,
    })
}

fn record(s: &RGState) -> ScaleRecord {
    let st = s.seq.step().expect("renormalized scale");
    ScaleRecord {
        n: s.scale_n,
        sigma_n: s.sigma_n,
        lambda_n: s.lambda_n,
        alpha_n_at_0: st.alpha_center,
        e_at_0: 0.0,
        beta_n: s.seq.beta(0.0),
        eps_meas: s.params.eps,
        delta_meas: s.params.delta,
        eta_meas: s.params.eta,
        tail_budget: st.report.tail,
        center: st.center,
        c_theta: st.report.c_theta,
    }
}

/// Runs the flow; the trace holds scales `0..=n_scales`.
pub fn run_flow(cfg: &FlowConfig) -> Result<RGTrace, FlowError> {
    run_flow_signed(cfg, cfg.model.p_mag)
}

/// Same flow with the total momentum `p ẑ` of either sign (the config
/// itself only admits `|p|`).
pub fn run_flow_signed(cfg: &FlowConfig, momentum: f64) -> Result<RGTrace, FlowError> {
    if momentum.abs() >= 1.0 / 3.0 {
        return Err(FlowError::Seed(model_seed::SeedError::InvalidConfig(format!(
            "|p| = {} must be < 1/3",
            momentum.abs()
        ))));
    }
    let grid = NormGrid::new(cfg.model.model.polarization().count());
    let s0 = seed(cfg, momentum)?;
    let first = first_decimation(&s0).map_err(|e| FlowError::Step { scale: -1, source: e })?;
    let mut states = vec![state(cfg, first, &grid)?];
    for n in 1..=cfg.n_scales {
        let next = rg_step(&states[n - 1].seq).map_err(|e| FlowError::Step {
            scale: n as i64,
            source: e,
        })?;
        states.push(state(cfg, next, &grid)?);
    }
    Ok(RGTrace {
        model: cfg.model,
        rg: cfg.rg.clone(),
        records: states.iter().map(record).collect(),
        states,
    })
}
