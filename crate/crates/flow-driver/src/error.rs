use model_seed::SeedError;
use rg_map::RgError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FlowError {
    #[error("scale {scale}: {source}")]
    Step {
        scale: i64,
        #[source]
        source: RgError,
    },
    #[error("scale {scale} left the polydisc: {reason}")]
    Polydisc { scale: usize, reason: String },
    #[error("trace too short: {0}")]
    Trace(String),
    #[error(transparent)]
    Seed(#[from] SeedError),
    #[error(transparent)]
    Rg(#[from] RgError),
}
