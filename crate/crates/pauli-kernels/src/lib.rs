//! Data model for matrix-valued Wick kernels.
//!
//! A kernel `w_{M,N}` is a 2×2 complex matrix valued function of the
//! reduced spectral point `X = (X0, Xpar, |X⊥|)` and of `M + N` photon
//! arguments `(|k|, θ, φ, λ)`.  Matrices are stored in the Pauli basis
//! (`w0·1 + w⃗·τ⃗`), samples live on tensor grids, and the norms follow the
//! weighted sup-norm family used by the renormalization map.

pub mod dump;
pub mod error;
pub mod grid;
pub mod norm;
pub mod pauli;
pub mod point;

pub use error::KernelError;
pub use grid::{eval_kernel, symmetrize, Axis, PhotonAxes, WickKernel, XAxes, ZeroLimit};
pub use norm::{kernel_norm, kernel_norm_with, sequence_norm_xi, Companions, NormFlavor};
pub use pauli::{pauli_decompose, PauliValue};
pub use point::{PhotonArg, Polarization, PolarizationModel, SpectralPoint};

/// `(2√π)`, the per-slot weight of the kernel norms.
pub fn slot_weight() -> f64 {
    2.0 * std::f64::consts::PI.sqrt()
}
