//! Feshbach pairs and the smooth Feshbach map.

use crate::{max_abs, FeshbachError};
use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

pub type CMat = DMatrix<Complex64>;

/// Condition-number cap above which `H_χ̄` counts as singular.
pub const COND_CAP: f64 = 1e12;
/// Dense storage limit.
pub const MAX_DIM: usize = 256;

/// Eigenvalues of `χ̄` below this are treated as outside `Ran(χ̄)`.
const RANGE_FLOOR: f64 = 1e-6;

fn commutator_norm(a: &CMat, b: &CMat) -> f64 {
    max_abs(&(a * b - b * a))
}

fn scale_of(m: &CMat) -> f64 {
    1.0 + max_abs(m)
}

/// `H`, `τ`, `χ`, `χ̄` with `R̄ = (τ + χ̄ωχ̄)⁻¹` on `Ran(χ̄)` precomputed.
#[derive(Clone, Debug)]
pub struct FeshbachPair {
    pub h: CMat,
    pub tau: CMat,
    pub chi: CMat,
    pub chibar: CMat,
    rbar: CMat,
    cond: f64,
}

/// Orthonormal columns spanning the eigenvectors of a Hermitian matrix with
/// eigenvalue above `floor`.
pub(crate) fn range_basis(m: &CMat, floor: f64) -> CMat {
    let eig = SymmetricEigen::new(m.clone());
    let cols: Vec<_> = (0..m.nrows())
        .filter(|&i| eig.eigenvalues[i] > floor)
        .map(|i| eig.eigenvectors.column(i).into_owned())
        .collect();
    if cols.is_empty() {
        CMat::zeros(m.nrows(), 0)
    } else {
        CMat::from_columns(&cols)
    }
}

/// Inverse of `m` restricted to the span of the columns of `basis`, extended
/// by zero; returns the inverse and the condition number of the block.
pub(crate) fn restricted_inverse(m: &CMat, basis: &CMat) -> Result<(CMat, f64), FeshbachError> {
    let n = m.nrows();
    if basis.ncols() == 0 {
        return Ok((CMat::zeros(n, n), 1.0));
    }
    let block = basis.adjoint() * m * basis;
    let sv = block.clone().svd(false, false).singular_values;
    // Scale by the full operator so that a block which vanishes to rounding
    // still counts as singular.
    let (smax, smin) = (sv.max().max(max_abs(m)), sv.min());
    let cond = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    if !(cond <= COND_CAP) {
        return Err(FeshbachError::PairViolation(format!(
            "restricted block has condition number {cond:e}"
        )));
    }
    let inv = block
        .try_inverse()
        .ok_or_else(|| FeshbachError::PairViolation("restricted block is singular".into()))?;
    Ok((basis * inv * basis.adjoint(), cond))
}

/// `√(1−χ²)` by Hermitian functional calculus, with eigenvalues clamped to [0, 1].
pub fn complementary_cutoff(chi: &CMat) -> Result<CMat, FeshbachError> {
    let eig = SymmetricEigen::new(chi.clone());
    let tol = 1e-10;
    let mut vals = Vec::with_capacity(chi.nrows());
    for &l in eig.eigenvalues.iter() {
        if l < -tol || l > 1.0 + tol {
            return Err(FeshbachError::Cutoff(format!("chi has eigenvalue {l} outside [0, 1]")));
        }
        let l = l.clamp(0.0, 1.0);
        let c = 1.0 - l * l;
        vals.push(if c < 1e-14 { 0.0 } else { c.sqrt() });
    }
    let u = &eig.eigenvectors;
    Ok(u * crate::diag(&vals) * u.adjoint())
}

impl FeshbachPair {
    /// Validates the pair, computing `χ̄` from `χ`.
    pub fn new(h: CMat, tau: CMat, chi: CMat) -> Result<Self, FeshbachError> {
        check_shapes(&h, &tau, &chi)?;
        if max_abs(&(&chi - chi.adjoint())) > 1e-12 {
            return Err(FeshbachError::Cutoff("chi is not Hermitian".into()));
        }
        let chibar = complementary_cutoff(&chi)?;
        Self::with_chibar(h, tau, chi, chibar)
    }

    /// Validates a pair whose `χ̄` is supplied (e.g. exactly diagonal).
    pub fn with_chibar(h: CMat, tau: CMat, chi: CMat, chibar: CMat) -> Result<Self, FeshbachError> {
        check_shapes(&h, &tau, &chi)?;
        if chibar.shape() != chi.shape() {
            return Err(FeshbachError::Dimension("chibar shape".into()));
        }
        let n = h.nrows();
        let unity = &chi * &chi + &chibar * &chibar - CMat::identity(n, n);
        if max_abs(&unity) > 1e-10 {
            return Err(FeshbachError::Cutoff(format!(
                "chi^2 + chibar^2 deviates from 1 by {:e}",
                max_abs(&unity)
            )));
        }
        let tol = 1e-10 * scale_of(&tau);
        let (c1, c2) = (commutator_norm(&chi, &tau), commutator_norm(&chibar, &tau));
        if c1 > tol || c2 > tol {
            return Err(FeshbachError::PairViolation(format!(
                "tau does not commute with the cutoffs ({c1:e}, {c2:e})"
            )));
        }
        let omega = &h - &tau;
        let hchibar = &tau + &chibar * &omega * &chibar;
        let basis = range_basis(&chibar, RANGE_FLOOR);
        let (rbar, cond) = restricted_inverse(&hchibar, &basis)?;
        Ok(Self { h, tau, chi, chibar, rbar, cond })
    }

    pub fn dim(&self) -> usize {
        self.h.nrows()
    }

    pub fn omega(&self) -> CMat {
        &self.h - &self.tau
    }

    /// `R̄ = (τ + χ̄ωχ̄)⁻¹` on `Ran(χ̄)`, zero on its complement.
    pub fn rbar(&self) -> &CMat {
        &self.rbar
    }

    pub fn condition(&self) -> f64 {
        self.cond
    }

    /// Same cutoffs and `τ`, different `H`.
    pub fn with_h(&self, h: CMat) -> Result<Self, FeshbachError> {
        Self::with_chibar(h, self.tau.clone(), self.chi.clone(), self.chibar.clone())
    }
}

fn check_shapes(h: &CMat, tau: &CMat, chi: &CMat) -> Result<(), FeshbachError> {
    let n = h.nrows();
    if !h.is_square() || tau.shape() != (n, n) || chi.shape() != (n, n) {
        return Err(FeshbachError::Dimension(format!(
            "H {:?}, tau {:?}, chi {:?}",
            h.shape(),
            tau.shape(),
            chi.shape()
        )));
    }
    if n > MAX_DIM {
        return Err(FeshbachError::TooLarge(n, MAX_DIM));
    }
    Ok(())
}

/// `F = τ + χωχ − χωχ̄R̄χ̄ωχ`.
pub fn smooth_feshbach(p: &FeshbachPair) -> CMat {
    let omega = p.omega();
    let cwc = &p.chi * &omega * &p.chi;
    let cross = &p.chi * &omega * &p.chibar * &p.rbar * &p.chibar * &omega * &p.chi;
    &p.tau + cwc - cross
}

/// `(Q, Q♯) = (χ − χ̄R̄χ̄ωχ, χ − χωχ̄R̄χ̄)`.
pub fn intertwiners(p: &FeshbachPair) -> (CMat, CMat) {
    let omega = p.omega();
    let bb = &p.chibar * &p.rbar * &p.chibar;
    let q = &p.chi - &bb * &omega * &p.chi;
    let qs = &p.chi - &p.chi * &omega * &bb;
    (q, qs)
}
