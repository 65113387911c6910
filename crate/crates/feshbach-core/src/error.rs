use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FeshbachError {
    #[error("matrix dimensions disagree: {0}")]
    Dimension(String),
    #[error("dimension {0} exceeds the dense limit {1}")]
    TooLarge(usize, usize),
    #[error("cutoff invalid: {0}")]
    Cutoff(String),
    #[error("Feshbach-pair violation: {0}")]
    PairViolation(String),
    #[error("cutoff nesting violated: |chi1 chi2 - chi2| = {0:e}")]
    Nesting(f64),
    #[error("derivative family violates the commuting hypotheses: {0}")]
    Hypothesis(String),
}
