use crate::SeedError;
use pauli_kernels::PolarizationModel;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    /// Transverse photons with minimal coupling and Zeeman term.
    Qed,
    /// Scalar bosons with longitudinal coupling; no spin.
    Nelson,
}

impl ModelKind {
    pub fn polarization(self) -> PolarizationModel {
        match self {
            ModelKind::Qed => PolarizationModel::Transverse,
            ModelKind::Nelson => PolarizationModel::Longitudinal,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CutoffSpec {
    pub sigma: f64,
    pub kexp: u32,
}

impl CutoffSpec {
    pub fn new(sigma: f64, kexp: u32) -> Result<Self, SeedError> {
        let s = Self { sigma, kexp };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<(), SeedError> {
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return Err(SeedError::Cutoff(format!("sigma must be positive, got {}", self.sigma)));
        }
        if self.kexp == 0 {
            return Err(SeedError::Cutoff("infrared exponent K must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelConfig {
    /// Total momentum `|p|`, along `ẑ`.
    pub p_mag: f64,
    /// Fine-structure constant (or Nelson coupling `g`).
    pub alpha: f64,
    pub sigma0: f64,
    pub kexp: u32,
    pub model: ModelKind,
}

impl ModelConfig {
    pub fn qed(p_mag: f64, alpha: f64, sigma0: f64) -> Self {
        Self {
            p_mag,
            alpha,
            sigma0,
            kexp: 1,
            model: ModelKind::Qed,
        }
    }

    pub fn nelson(p_mag: f64, g: f64, sigma0: f64) -> Self {
        Self {
            model: ModelKind::Nelson,
            ..Self::qed(p_mag, g, sigma0)
        }
    }

    pub fn validate(&self) -> Result<(), SeedError> {
        if !(self.p_mag >= 0.0 && self.p_mag < 1.0 / 3.0) {
            return Err(SeedError::InvalidConfig(format!(
                "|p| must lie in [0, 1/3), got {}",
                self.p_mag
            )));
        }
        if !(self.alpha >= 0.0 && self.alpha.is_finite()) {
            return Err(SeedError::InvalidConfig(format!("coupling must be >= 0, got {}", self.alpha)));
        }
        if !(self.sigma0 > 0.0 && self.sigma0 < 1.0) {
            return Err(SeedError::InvalidConfig(format!(
                "sigma0 must lie in (0, 1), got {}",
                self.sigma0
            )));
        }
        self.cutoff().validate()
    }

    pub fn cutoff(&self) -> CutoffSpec {
        CutoffSpec {
            sigma: self.sigma0,
            kexp: self.kexp,
        }
    }
}
