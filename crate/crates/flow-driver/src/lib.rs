//! Iteration of the renormalization map over scales, the backward
//! spectral-parameter chain, `β_(n)`, the renormalized mass and the
//! `σ ↘ 0` sweep.

pub mod chain;
pub mod error;
pub mod flow;
pub mod mass;

pub use chain::{solve_e_infinity, EChain};
pub use error::FlowError;
pub use flow::{crossing_scale, run_flow, run_flow_signed, FlowConfig, RGState, RGTrace, ScaleRecord};
pub use mass::{beta_coefficient, beta_stencil, renormalized_mass, sigma_limit_study, MassReport, SigmaRow, SigmaStudy};
