use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SeedError {
    #[error("invalid model configuration: {0}")]
    InvalidConfig(String),
    #[error("photon momentum must be positive, got |k| = {0}")]
    ZeroMomentum(f64),
    #[error("cutoff parameter out of range: {0}")]
    Cutoff(String),
}
