//! Scale-0 kernels read off from `(p − P_f − √α A)²/2 + H_f + √α τ·B`.

use crate::cutoff::kappa_unchecked;
use crate::source::scalar_identity;
use crate::{Degree2, KernelSource, MForm, ModelConfig, ModelKind, SeedError, VForm, XPoint};
use gauss_quad::GaussLegendre;
use num_complex::Complex64;
use pauli_kernels::{PauliValue, PolarizationModel};
use std::f64::consts::PI;
use std::num::NonZeroUsize;

/// The scale-0 sequence: `E + T_seed + W` with `E = |p|²/2 + (α/2)⟨A²⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeedSequence {
    pub cfg: ModelConfig,
    /// Constant `E` of the seed Hamiltonian.
    pub energy: f64,
    /// Coefficient of `X⃗²` in the free part.
    pub lambda0: f64,
}

pub const VACUUM_NODES: usize = 512;

/// `⟨Ω, A_σ² Ω⟩ = n_pol · 4π ∫ κ_σ(k)² k dk`, by Gauss–Legendre on the
/// panels `[0, σ]`, `[σ, ½]`, `[½, 1]`.
pub fn vacuum_term(cfg: &ModelConfig) -> f64 {
    let rule = GaussLegendre::new(NonZeroUsize::new(VACUUM_NODES).unwrap());
    let s = cfg.sigma0.min(0.5);
    let f = |k: f64| {
        let kap = kappa_unchecked(k, cfg.sigma0, cfg.kexp);
        kap * kap * k
    };
    let integral: f64 = [(0.0, s), (s, 0.5), (0.5, 1.0)]
        .iter()
        .filter(|(a, b)| b > a)
        .map(|&(a, b)| rule.integrate(a, b, f))
        .sum();
    cfg.model.polarization().count() as f64 * 4.0 * PI * integral
}

fn build(cfg: &ModelConfig, kind: ModelKind) -> Result<SeedSequence, SeedError> {
    cfg.validate()?;
    if cfg.model != kind {
        return Err(SeedError::InvalidConfig(format!("expected a {kind:?} configuration")));
    }
    Ok(SeedSequence {
        cfg: *cfg,
        energy: 0.5 * cfg.p_mag * cfg.p_mag + 0.5 * cfg.alpha * vacuum_term(cfg),
        lambda0: 0.5,
    })
}

pub fn seed_kernels(cfg: &ModelConfig) -> Result<SeedSequence, SeedError> {
    build(cfg, ModelKind::Qed)
}

pub fn nelson_seed_kernels(cfg: &ModelConfig) -> Result<SeedSequence, SeedError> {
    build(cfg, ModelKind::Nelson)
}

impl SeedSequence {
    /// Same sequence with the momentum sign flipped (used by the reflection
    /// check; `|p|` itself is validated by the config).
    pub fn with_signed_momentum(&self, p: f64) -> Self {
        let mut s = self.clone();
        s.cfg.p_mag = p;
        s
    }
}

impl KernelSource for SeedSequence {
    fn polarization(&self) -> PolarizationModel {
        self.cfg.model.polarization()
    }

    fn momentum(&self) -> f64 {
        self.cfg.p_mag
    }

    fn coupling(&self) -> f64 {
        self.cfg.alpha
    }

    fn contraction_weight(&self, k: f64) -> f64 {
        let kap = kappa_unchecked(k, self.cfg.sigma0, self.cfg.kexp);
        kap * kap / k
    }

    fn mu(&self) -> f64 {
        1.0
    }

    fn ir_scale(&self) -> Option<f64> {
        Some(self.cfg.sigma0)
    }

    fn wrapped(&self) -> bool {
        false
    }

    /// `X0 − |p| X_∥ + λ₀ X⃗²`.
    fn free(&self, _r: f64, x: &XPoint) -> PauliValue {
        let x2 = x.v.iter().map(|c| c * c).sum::<f64>();
        PauliValue::real_scalar(x.x0 - self.cfg.p_mag * x.v[2] + self.lambda0 * x2)
    }

    /// `V_i = −√α (p ẑ − X⃗)_i + √α i τ·(k⃗ × e_i)`; Nelson drops the spin term.
    fn v01(&self, x: &XPoint, k: &[f64; 3]) -> VForm {
        let g = self.cfg.alpha.sqrt();
        let d = [-x.v[0], -x.v[1], self.cfg.p_mag - x.v[2]];
        let mut out = [PauliValue::ZERO; 3];
        for (i, o) in out.iter_mut().enumerate() {
            let mut v = PauliValue::real_scalar(-g * d[i]);
            if self.cfg.model == ModelKind::Qed {
                let mut e = [0.0; 3];
                e[i] = 1.0;
                let c = [
                    k[1] * e[2] - k[2] * e[1],
                    k[2] * e[0] - k[0] * e[2],
                    k[0] * e[1] - k[1] * e[0],
                ];
                v.wvec = c.map(|cl| Complex64::new(0.0, g * cl));
            }
            *o = v;
        }
        out
    }

    /// `w₁₁ = 2α ε·ε′`, `w₀₂ = α ε·ε′` (from the `A²` term).
    fn w2(&self, kind: Degree2, _x: &XPoint, _ka: &[f64; 3], _kb: &[f64; 3]) -> MForm {
        match kind {
            Degree2::D11 => scalar_identity(2.0 * self.cfg.alpha),
            Degree2::D02 => scalar_identity(self.cfg.alpha),
        }
    }
}
