//! Scale-0 data for the fiber Hamiltonians: photon cutoffs, the smooth
//! Feshbach partition `χ₁`, the contraction measure, and the seed Wick
//! kernels of the QED and Nelson models.
//!
//! Kernels are exposed through [`KernelSource`], which is also implemented
//! by every renormalized scale downstream.  Degree-1 kernels are stored in
//! polarization-stripped form `w(X; k, λ) = ε(k, λ)·V⃗(X, k)`, degree-2
//! kernels as `ε(k_a)·M(X; k_a, k_b)·ε(k_b)`.

pub mod config;
pub mod cutoff;
pub mod error;
pub mod seed;
pub mod source;

pub use config::{CutoffSpec, ModelConfig, ModelKind};
pub use cutoff::{chi1, chi1_bar, chi_rho, chi_rho_bar, cutoff_kappa, kappa_unchecked, measure_weight, smoothstep, theta_profile, uv_bridge};
pub use error::SeedError;
pub use seed::{nelson_seed_kernels, seed_kernels, vacuum_term, SeedSequence};
pub use source::{adjoint_m, adjoint_v, dot_m, dot_v, norm3, Degree2, KernelSource, MForm, VForm, XPoint, ZERO_M, ZERO_V};
