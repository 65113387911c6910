//! Exact finite-dimensional smooth Feshbach map.
//!
//! Dense complex matrices throughout: the map itself, the intertwiners
//! `Q`, `Q♯`, the overlap operator `Υ`, residual reports for the
//! isospectrality, composition and derivative identities, and a truncated
//! Fock-space builder that turns Wick kernels into dense operators.

pub mod checks;
pub mod error;
pub mod fock;
pub mod overlap;
pub mod pair;
pub mod random;

pub use checks::{
    check_composition, check_composition_exact, check_derivative, check_isospectral, feshbach_derivative, CompositionReport,
    DerivativeReport, IsospectralReport,
};
pub use error::FeshbachError;
pub use overlap::{overlap_upsilon, regrouped_feshbach};
pub use pair::{intertwiners, smooth_feshbach, CMat, FeshbachPair, COND_CAP, MAX_DIM};

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Largest entry modulus, used for all residuals.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn diag(d: &[f64]) -> CMat {
    DMatrix::from_fn(d.len(), d.len(), |i, j| {
        if i == j {
            Complex64::new(d[i], 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}
