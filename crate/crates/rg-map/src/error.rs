use model_seed::SeedError;
use pauli_kernels::KernelError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RgError {
    #[error("Feshbach pair violated: {0}")]
    Feshbach(String),
    #[error("polydisc violation: {0}")]
    Polydisc(String),
    #[error("series tail {tail:.3e} exceeds budget {budget:.1e} of the kept sum at scale {scale}")]
    TailBudget { scale: i64, tail: f64, budget: f64 },
    #[error("spectral map: {0}")]
    Spectral(String),
    #[error("unsupported setting: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Seed(#[from] SeedError),
}
