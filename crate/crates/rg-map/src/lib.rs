//! The isospectral renormalization map `R_ρ` on truncated kernel sequences.
//!
//! A [`KernelSequence`] is a lazily evaluated effective Hamiltonian at one
//! scale.  [`first_decimation`] turns the seed into scale 0, [`rg_step`]
//! applies one decimation–rescaling–rebasing step.  Each step solves the
//! implicit equation for `α`, computes the degree-0 correction by the
//! resolvent series (two-contraction terms up to `L = 3`), transports the
//! degree-1 and degree-2 kernels, and fits every `r`-dependence by
//! Chebyshev interpolation on the rebased spectral interval.

pub mod cheb;
pub mod error;
pub mod level;
pub mod measure;
pub mod params;
pub mod probe;
pub mod quad;
pub mod rescale;
pub mod step;
pub mod wick;

pub use cheb::Cheb;
pub use error::RgError;
pub use level::{Contraction, Grid3, LevelRef, StepLevel, StepReport};
pub use measure::{free_deviation, materialize, materialize_source, measure_polydisc, Materialized, NormGrid};
pub use params::{PolydiscParams, RgParams};
pub use probe::ConstantSource;
pub use quad::QuadSpec;
pub use rescale::{rescale, rescale_prefactor};
pub use step::{
    crossing_index, first_decimation, lambda_at, rg_step, sigma_at, solve_alpha, spectral_map, AlphaSolution,
    Direction,
};
pub use wick::delta00;

use model_seed::{KernelSource, ModelConfig, SeedSequence};
use std::sync::Arc;

/// One effective Hamiltonian: the seed (`scale == None`) or a renormalized
/// scale `n ≥ 0`.
#[derive(Clone)]
pub struct KernelSequence {
    pub level: LevelRef,
    pub cfg: ModelConfig,
    pub params: RgParams,
    pub scale: Option<usize>,
    pub sigma: f64,
    pub lambda: f64,
}

impl KernelSequence {
    pub fn from_seed(seed: SeedSequence, params: RgParams) -> Result<Self, RgError> {
        params.validate()?;
        let cfg = seed.cfg;
        Ok(Self {
            lambda: seed.lambda0,
            sigma: cfg.sigma0,
            level: LevelRef::Base(Arc::new(seed)),
            cfg,
            params,
            scale: None,
        })
    }

    /// A custom source treated like the seed (used by oracles and tests).
    pub fn from_source(src: Arc<dyn KernelSource>, cfg: ModelConfig, params: RgParams) -> Result<Self, RgError> {
        params.validate()?;
        Ok(Self {
            level: LevelRef::Base(src),
            sigma: cfg.sigma0,
            lambda: params.lambda0,
            cfg,
            params,
            scale: None,
        })
    }

    /// A custom source treated as an already renormalized scale `n`.
    pub fn at_scale(src: Arc<dyn KernelSource>, cfg: ModelConfig, params: RgParams, n: usize) -> Result<Self, RgError> {
        let mut s = Self::from_source(src, cfg, params)?;
        s.scale = Some(n);
        s.sigma = sigma_at(cfg.sigma0, s.params.rho, n);
        s.lambda = lambda_at(s.params.lambda0, s.params.rho, n);
        Ok(s)
    }

    pub(crate) fn child(&self, level: StepLevel) -> Self {
        Self {
            scale: Some(level.n),
            sigma: level.sigma,
            lambda: level.lambda,
            level: LevelRef::Step(Arc::new(level)),
            cfg: self.cfg,
            params: self.params.clone(),
        }
    }

    pub fn source(&self) -> &dyn KernelSource {
        self.level.source()
    }

    /// Data of the step that produced this scale.
    pub fn step(&self) -> Option<&StepLevel> {
        match &self.level {
            LevelRef::Step(s) => Some(s),
            LevelRef::Base(_) => None,
        }
    }

    pub fn report(&self) -> Option<&StepReport> {
        self.step().map(|s| &s.report)
    }

    /// `β(r)`, the coefficient of `X_∥` in the free part.
    pub fn beta(&self, r: f64) -> f64 {
        self.source().beta(r)
    }

    /// Whether every interaction kernel vanishes identically.
    pub fn is_free(&self) -> bool {
        self.source().coupling() == 0.0
    }
}
