//! Kernel recursion versus a dense truncated-Fock Feshbach computation.
//!
//! The interaction is the constant longitudinal coupling `w₀₁ = c` of
//! [`ConstantSource`], so that the kernel side `Δw̃₀₀(0; 0)` is a single
//! radial integral and the dense side is `H = H_f + χ₁ W χ₁` with
//! `W = Σ_j g_j (a_j + a_j*)` on a few photon modes.  Modes sit at
//! Gauss–Legendre nodes on the panels where the integrand is smooth and
//! carry the weight `g_j² = 4π c² |k_j| w_j`.

use crate::report::CheckReport;
use feshbach_core::fock::FockBasis;
use feshbach_core::{smooth_feshbach, FeshbachError, FeshbachPair, MAX_DIM};
use gauss_quad::GaussLegendre;
use model_seed::{chi1, chi_rho, ModelConfig, XPoint};
use pauli_kernels::PauliValue;
use rg_map::level::StepCtx;
use rg_map::quad::Rules;
use rg_map::{delta00, ConstantSource, KernelSequence, RgError, RgParams};
use std::f64::consts::PI;
use std::num::NonZeroUsize;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct OracleConfig {
    pub coupling: f64,
    pub n_modes: usize,
    pub max_photons: usize,
    pub params: RgParams,
    pub tolerance: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            coupling: 1e-3,
            n_modes: 6,
            max_photons: 2,
            params: RgParams::default(),
            tolerance: 1e-3,
        }
    }
}

#[derive(Clone, Debug)]
pub struct OracleReport {
    pub report: CheckReport,
    pub kernel: f64,
    pub dense: f64,
    pub relative_error: f64,
    pub n_modes: usize,
    pub dim: usize,
}

#[derive(Debug)]
pub enum OracleError {
    Dimension(usize),
    Rg(RgError),
    Feshbach(FeshbachError),
    Modes(usize),
}

impl std::fmt::Display for OracleError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Dimension(d) => write!(f, "oracle dimension {d} exceeds {MAX_DIM}"),
            Self::Rg(e) => write!(f, "kernel side: {e}"),
            Self::Feshbach(e) => write!(f, "dense side: {e}"),
            Self::Modes(n) => write!(f, "need at least 3 modes, got {n}"),
        }
    }
}

impl std::error::Error for OracleError {}

/// Split of `n` modes over the panels `[3ρ/4, ρ]`, `[ρ, 3/4]`, `[3/4, 1]`.
/// The middle integrand is constant; the outer two are equally curved in
/// their panel variable, so the remaining modes alternate between them,
/// outer panel first.
pub fn mode_allocation(n: usize) -> [usize; 3] {
    let rest = n.saturating_sub(1);
    [rest / 2, 1, rest - rest / 2]
}

/// Mode momenta (along `ẑ`) and quadrature weights.
pub fn oracle_modes(n: usize, rho: f64) -> Vec<(f64, f64)> {
    let panels = [(0.75 * rho, rho), (rho, 0.75), (0.75, 1.0)];
    let mut out = Vec::with_capacity(n);
    for (count, (a, b)) in mode_allocation(n).into_iter().zip(panels) {
        let Some(nz) = NonZeroUsize::new(count) else { continue };
        let rule = GaussLegendre::new(nz);
        let (h, m) = (0.5 * (b - a), 0.5 * (a + b));
        for &(x, w) in rule.as_node_weight_pairs().iter() {
            out.push((m + h * x, h * w));
        }
    }
    out
}

/// Kernel-recursion value of `Δw̃₀₀` at `r = 0`, `X = 0`, `α = 1`.
pub fn kernel_value(c: f64, params: &RgParams) -> Result<f64, RgError> {
    let seq = KernelSequence::at_scale(
        Arc::new(ConstantSource { c }),
        ModelConfig::nelson(0.0, 0.0, 1e-6),
        params.clone(),
        1,
    )?;
    let ctx = StepCtx {
        prev: seq.level.clone(),
        rho_c: params.rho,
        rules: Arc::new(Rules::new(&params.quad)),
        floor: params.floor,
    };
    let chain = seq.level.freeze(0.0);
    Ok(delta00(&ctx, &chain, 1.0, &XPoint::ORIGIN).w0.re)
}

/// Dense vacuum element of `F_{χ_ρ}(H, H_f) − ⟨H⟩_Ω`; returns it with the
/// operator dimension.
pub fn dense_value(c: f64, n_modes: usize, max_photons: usize, rho: f64) -> Result<(f64, usize), OracleError> {
    let modes = oracle_modes(n_modes, rho);
    let g: Vec<f64> = modes.iter().map(|&(k, w)| c * (4.0 * PI * k * w).sqrt()).collect();
    let basis = FockBasis::new(modes.iter().map(|&(k, _)| [0.0, 0.0, k]).collect(), max_photons, f64::INFINITY);
    if basis.dim() > MAX_DIM {
        return Err(OracleError::Dimension(basis.dim()));
    }
    let hf = basis.diagonal(|e, _| PauliValue::real_scalar(e));
    let c1 = basis.diagonal(|e, _| PauliValue::real_scalar(chi1(e)));
    let chi = basis.diagonal(|e, _| PauliValue::real_scalar(chi_rho(e, rho)));
    let chibar = basis.diagonal(|e, _| {
        let x = chi_rho(e, rho);
        PauliValue::real_scalar((1.0 - x * x).max(0.0).sqrt())
    });
    let ann = basis.wick(0, 1, |_, _, _, js| PauliValue::real_scalar(g[js[0]]));
    let cre = basis.wick(1, 0, |_, _, is, _| PauliValue::real_scalar(g[is[0]]));
    let h = &hf + &c1 * (ann + cre) * &c1;
    let pair = FeshbachPair::with_chibar(h, hf.clone(), chi, chibar).map_err(OracleError::Feshbach)?;
    let f = smooth_feshbach(&pair);
    Ok((basis.vacuum_block(&f).w0.re, basis.dim()))
}

/// Compares the two sides; the residual is the relative error.
pub fn oracle_compare(cfg: &OracleConfig) -> Result<OracleReport, OracleError> {
    if cfg.n_modes < 3 {
        return Err(OracleError::Modes(cfg.n_modes));
    }
    let kernel = kernel_value(cfg.coupling, &cfg.params).map_err(OracleError::Rg)?;
    let (dense, dim) = dense_value(cfg.coupling, cfg.n_modes, cfg.max_photons, cfg.params.rho)?;
    let diff = (kernel - dense).abs();
    let relative_error = if kernel == 0.0 && dense == 0.0 { 0.0 } else { diff / kernel.abs().max(dense.abs()) };
    let witness = format!("vacuum element, {} modes, dim {dim}: kernel {kernel:e}, dense {dense:e}", cfg.n_modes);
    Ok(OracleReport {
        report: CheckReport::new("oracle vacuum element", relative_error, cfg.tolerance, vec![witness]),
        kernel,
        dense,
        relative_error,
        n_modes: cfg.n_modes,
        dim,
    })
}

/// One comparison per mode count.
pub fn oracle_series(cfg: &OracleConfig, modes: impl IntoIterator<Item = usize>) -> Result<Vec<OracleReport>, OracleError> {
    modes
        .into_iter()
        .map(|n| oracle_compare(&OracleConfig { n_modes: n, ..cfg.clone() }))
        .collect()
}
