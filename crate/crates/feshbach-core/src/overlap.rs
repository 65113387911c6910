//! Overlap operator `Υ = 1 − χ̄T′χ̄R̄₀` and the regrouped Feshbach formula.

use crate::pair::{complementary_cutoff, range_basis, restricted_inverse};
use crate::{max_abs, CMat, FeshbachError};

/// `Υ` and `R̄₀ = (τ + χ̄T′χ̄)⁻¹` (on `Ran(χ̄)`) for commuting `T`, `τ`, `χ`.
pub fn overlap_parts(t: &CMat, tau: &CMat, chi: &CMat, chibar: &CMat) -> Result<(CMat, CMat), FeshbachError> {
    let n = t.nrows();
    if tau.shape() != (n, n) || chi.shape() != (n, n) || chibar.shape() != (n, n) {
        return Err(FeshbachError::Dimension("overlap operands".into()));
    }
    let scale = 1.0 + max_abs(t) + max_abs(tau);
    for (a, b, what) in [(t, chi, "[T, chi]"), (t, tau, "[T, tau]")] {
        let c = max_abs(&(a * b - b * a));
        if c > 1e-10 * scale {
            return Err(FeshbachError::PairViolation(format!("{what} = {c:e}")));
        }
    }
    let tprime = t - tau;
    let m = tau + chibar * &tprime * chibar;
    let (r0, _) = restricted_inverse(&m, &range_basis(chibar, 1e-6))?;
    let ups = CMat::identity(n, n) - chibar * &tprime * chibar * &r0;
    Ok((ups, r0))
}

pub fn overlap_upsilon(t: &CMat, tau: &CMat, chi: &CMat) -> Result<CMat, FeshbachError> {
    let chibar = complementary_cutoff(chi)?;
    Ok(overlap_parts(t, tau, chi, &chibar)?.0)
}

/// `F = τ + χT′Υχ + χΥ(W − Wχ̄R̄χ̄W)Υχ` for `H = T + W`.
pub fn regrouped_feshbach(t: &CMat, w: &CMat, tau: &CMat, chi: &CMat) -> Result<CMat, FeshbachError> {
    let chibar = complementary_cutoff(chi)?;
    let (ups, _) = overlap_parts(t, tau, chi, &chibar)?;
    let pair = crate::FeshbachPair::with_chibar(t + w, tau.clone(), chi.clone(), chibar.clone())?;
    let rb = pair.rbar();
    let inner = w - w * &chibar * rb * &chibar * w;
    Ok(tau + chi * (t - tau) * &ups * chi + chi * &ups * inner * &ups * chi)
}
