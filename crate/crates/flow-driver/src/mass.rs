//! `β_(n)`, the renormalized mass by flow-level central differences in
//! `|p|`, and the `σ ↘ 0` sweep.

use crate::flow::{crossing_scale, run_flow_signed, FlowConfig, RGState, RGTrace};
use crate::{solve_e_infinity, FlowError};
use model_seed::XPoint;
use rg_map::KernelSequence;

/// Stored coefficient of `X_∥` at spectral parameter `r`.
pub fn beta_coefficient(state: &RGState, r: f64) -> f64 {
    state.seq.beta(r)
}

/// `∂_{X_∥}` of the degree-0 data at the origin by a central stencil.
pub fn beta_stencil(seq: &KernelSequence, r: f64, h: f64) -> f64 {
    let src = seq.source();
    let p = src.free(r, &XPoint::new(0.0, [0.0, 0.0, h])).w0.re;
    let m = src.free(r, &XPoint::new(0.0, [0.0, 0.0, -h])).w0.re;
    (p - m) / (2.0 * h)
}

#[derive(Clone, Debug, PartialEq)]
pub struct MassReport {
    pub m_ren: f64,
    pub n_last: usize,
    /// `β̃_(n_last)` at `p − h`, `p`, `p + h`.
    pub beta: [f64; 3],
    pub h: f64,
    /// `∂_{|p|} β̃`.
    pub dbeta: f64,
    /// Second difference of `β̃` in `|p|`, the `E‴` proxy.
    pub d2beta: f64,
    /// `|m_ren(n_last) − m_ren(n_last − 1)|`.
    pub n_increment: f64,
    /// `|m_ren(central) − m_ren(forward)|`, an estimate of the `h` error.
    pub h_estimate: f64,
}

fn late_beta(trace: &RGTrace, n: usize) -> Result<f64, FlowError> {
    let last = trace.states.len() - 2;
    let e = solve_e_infinity(trace, n, last)?.value();
    Ok(trace.states[n].seq.beta(e))
}

/// `m_ren = 1/(−∂_{|p|} β̃_(n_last))` with `n_last = N(σ₀) + 8` unless
/// `n_last` is given.
pub fn renormalized_mass(cfg: &FlowConfig, n_last: Option<usize>) -> Result<MassReport, FlowError> {
    let p = cfg.model.p_mag;
    let n_last = n_last.unwrap_or(crossing_scale(cfg.model.sigma0, cfg.rg.rho) + 8).max(1);
    let h = 1e-3 * p.max(0.05);
    let mut c = cfg.clone();
    c.n_scales = n_last + 1;
    c.measure = false;
    let mut beta = [0.0; 3];
    let mut beta_prev = [0.0; 3];
    for (i, q) in [p - h, p, p + h].into_iter().enumerate() {
        let trace = run_flow_signed(&c, q)?;
        beta[i] = late_beta(&trace, n_last)?;
        beta_prev[i] = late_beta(&trace, n_last - 1)?;
    }
    let dbeta = (beta[2] - beta[0]) / (2.0 * h);
    let m_ren = -1.0 / dbeta;
    let m_prev = -2.0 * h / (beta_prev[2] - beta_prev[0]);
    let m_fwd = -h / (beta[2] - beta[1]);
    Ok(MassReport {
        m_ren,
        n_last,
        beta,
        h,
        dbeta,
        d2beta: (beta[2] - 2.0 * beta[1] + beta[0]) / (h * h),
        n_increment: (m_ren - m_prev).abs(),
        h_estimate: (m_ren - m_fwd).abs(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SigmaRow {
    pub p: f64,
    pub sigma: f64,
    pub mass: MassReport,
    /// `|m_ren(p, σ) − m_ren(0, σ)|`.
    pub dm_p0: f64,
    /// `|m_ren(p, σ) − m_ren(0, σ)| / (|p| log(1/σ))`; zero at `p = 0`.
    pub envelope_ratio: f64,
    /// `|E‴ proxy| / log(1/σ)`.
    pub third_ratio: f64,
    /// `|m_ren(p, σ) − m_ren(p, σ_prev)|` for the previous `σ` in the list.
    pub sigma_increment: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SigmaStudy {
    pub rows: Vec<SigmaRow>,
}

/// Renormalized mass over `σ × p`; a `p = 0` column is always included as
/// the reference.
pub fn sigma_limit_study(base: &FlowConfig, sigmas: &[f64], ps: &[f64]) -> Result<SigmaStudy, FlowError> {
    if sigmas.is_empty() || ps.is_empty() {
        return Err(FlowError::Trace("sigma and p lists must be nonempty".into()));
    }
    let mut plist = vec![0.0];
    plist.extend(ps.iter().copied().filter(|&p| p != 0.0));
    let mut rows = Vec::new();
    let mut prev: Vec<Option<f64>> = vec![None; plist.len()];
    for &sigma in sigmas {
        let mut m0 = 0.0;
        for (j, &p) in plist.iter().enumerate() {
            let mut c = base.clone();
            c.model.sigma0 = sigma;
            c.model.p_mag = p;
            c.model.validate()?;
            let mass = renormalized_mass(&c, None)?;
            if j == 0 {
                m0 = mass.m_ren;
            }
            let log = (1.0 / sigma).ln();
            let dm = (mass.m_ren - m0).abs();
            rows.push(SigmaRow {
                p,
                sigma,
                dm_p0: dm,
                envelope_ratio: if p == 0.0 { 0.0 } else { dm / (p * log) },
                third_ratio: mass.d2beta.abs() / log,
                sigma_increment: prev[j].map(|m: f64| (mass.m_ren - m).abs()),
                mass: mass.clone(),
            });
            prev[j] = Some(mass.m_ren);
        }
    }
    Ok(SigmaStudy { rows })
}
