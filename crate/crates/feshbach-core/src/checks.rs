//! Residual reports for the isospectrality, composition and derivative
//! identities.

use crate::pair::{complementary_cutoff, range_basis};
use crate::{intertwiners, max_abs, smooth_feshbach, CMat, FeshbachError, FeshbachPair};
use nalgebra::DVector;
use num_complex::Complex64;

/// Relative singular-value threshold for numerical rank.
const RANK_TOL: f64 = 1e-9;

fn svd_null(m: &CMat) -> (usize, f64, DVector<Complex64>) {
    let svd = m.clone().svd(false, true);
    let sv = &svd.singular_values;
    let smax = sv.max();
    let rank = sv.iter().filter(|&&s| s > RANK_TOL * smax).count();
    let imin = sv.imin();
    let vt = svd.v_t.expect("requested");
    let null = vt.row(imin).adjoint();
    (rank, sv[imin], null)
}

#[derive(Clone, Debug, Default)]
pub struct IsospectralReport {
    pub rank_h: usize,
    pub rank_f: usize,
    pub dim: usize,
    pub dim_range: usize,
    /// `H` invertible ⟺ `F|Ran χ` invertible.
    pub equivalence: bool,
    /// `χF − HQ` and `Fχ − Q♯H`.
    pub intertwining: f64,
    /// `Q♯HQ − F + Fχ̄τ⁻¹χ̄F`, when `τ` is invertible.
    pub qhq: Option<f64>,
    pub inverse_f: Option<f64>,
    pub inverse_h: Option<f64>,
    /// `‖Fχψ‖/‖χψ‖` for `Hψ = 0`.
    pub kernel_forward: Option<f64>,
    /// `‖HQφ‖/‖φ‖` for `Fφ = 0`, `φ ∈ Ran χ`.
    pub kernel_backward: Option<f64>,
    /// Invariance of `Ran χ`'s complement: `F − τ` there.
    pub complement: f64,
}

impl IsospectralReport {
    pub fn max_residual(&self) -> f64 {
        [
            Some(self.intertwining),
            self.qhq,
            self.inverse_f,
            self.inverse_h,
            self.kernel_forward,
            self.kernel_backward,
            Some(self.complement),
        ]
        .into_iter()
        .flatten()
        .fold(0.0, f64::max)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.equivalence && self.max_residual() < tol
    }
}

pub fn check_isospectral(p: &FeshbachPair) -> IsospectralReport {
    let n = p.dim();
    let f = smooth_feshbach(p);
    let (q, qs) = intertwiners(p);
    let id = CMat::identity(n, n);
    let scale = 1.0 + max_abs(&p.h);
    let intertwining = max_abs(&(&p.chi * &f - &p.h * &q)).max(max_abs(&(&f * &p.chi - &qs * &p.h))) / scale;

    let range = range_basis(&p.chi, 1e-6);
    let complement = {
        let perp = range_basis(&(&id - &range * range.adjoint()), 0.5);
        if perp.ncols() == 0 {
            0.0
        } else {
            max_abs(&(perp.adjoint() * (&f - &p.tau) * &perp))
        }
    };
    let f_block = range.adjoint() * &f * &range;
    let (rank_h, _, psi) = svd_null(&p.h);
    let (rank_f, _, phi_r) = if range.ncols() > 0 {
        svd_null(&f_block)
    } else {
        (0, 0.0, DVector::zeros(0))
    };
    let h_inv = rank_h == n;
    let f_inv = rank_f == range.ncols();
    let mut rep = IsospectralReport {
        rank_h,
        rank_f,
        dim: n,
        dim_range: range.ncols(),
        equivalence: h_inv == f_inv,
        intertwining,
        complement,
        ..Default::default()
    };
    let tau_inv = p.tau.clone().try_inverse();
    if let Some(ti) = &tau_inv {
        let lhs = &qs * &p.h * &q;
        let rhs = &f - &f * &p.chibar * ti * &p.chibar * &f;
        rep.qhq = Some(max_abs(&(lhs - rhs)) / scale);
    }
    if h_inv && f_inv {
        let hi = p.h.clone().try_inverse().expect("full rank");
        let fi_block = f_block.try_inverse().expect("full rank");
        // F⁻¹ on Ran χ, extended by τ⁻¹ on the complement where needed below.
        let fi_range = &range * fi_block * range.adjoint();
        if let Some(ti) = &tau_inv {
            let fi_full = f.clone().try_inverse();
            if let Some(fi) = fi_full {
                let formula = &p.chi * &hi * &p.chi + &p.chibar * ti * &p.chibar;
                rep.inverse_f = Some(max_abs(&(fi - formula)) / (1.0 + max_abs(&hi) + max_abs(ti)));
            }
        }
        let formula_h = &q * &fi_range * &qs + &p.chibar * p.rbar() * &p.chibar;
        rep.inverse_h = Some(max_abs(&(&hi - formula_h)) / (1.0 + max_abs(&hi)));
    } else {
        if !h_inv {
            let cpsi = &p.chi * &psi;
            let nc = cpsi.norm();
            if nc > 0.0 {
                rep.kernel_forward = Some((&f * &cpsi).norm() / nc);
            }
        }
        if !f_inv && range.ncols() > 0 {
            let phi = &range * phi_r;
            rep.kernel_backward = Some((&p.h * (&q * &phi)).norm() / phi.norm());
        }
    }
    rep
}

#[derive(Clone, Debug)]
pub struct CompositionReport {
    pub f: f64,
    pub q: f64,
    pub qsharp: f64,
    /// `A Q_{χ₂}(H,τ₂) − A Q_{χ₂}(F₁,τ₁₂)` with `A` the projector onto `ker χ̄₁`.
    pub aq: Option<f64>,
}

impl CompositionReport {
    pub fn max_residual(&self) -> f64 {
        self.f.max(self.q).max(self.qsharp).max(self.aq.unwrap_or(0.0))
    }
}

/// Concatenation rule with `τ₁₂ = τ₂`; requires `χ₁χ₂ = χ₂χ₁ = χ₂`.
pub fn check_composition(
    h: &CMat,
    tau2: &CMat,
    chi1: &CMat,
    chi2: &CMat,
    tau1: &CMat,
) -> Result<CompositionReport, FeshbachError> {
    let (cb1, cb2) = (complementary_cutoff(chi1)?, complementary_cutoff(chi2)?);
    check_composition_exact(h, tau2, (chi1, &cb1), (chi2, &cb2), tau1)
}

/// [`check_composition`] with both `χ̄ᵢ` supplied; `√(1 − χ²)` taken by
/// eigendecomposition loses accuracy where `χ` approaches 1.
pub fn check_composition_exact(
    h: &CMat,
    tau2: &CMat,
    (chi1, chibar1): (&CMat, &CMat),
    (chi2, chibar2): (&CMat, &CMat),
    tau1: &CMat,
) -> Result<CompositionReport, FeshbachError> {
    let nest = max_abs(&(chi1 * chi2 - chi2)).max(max_abs(&(chi2 * chi1 - chi2)));
    if nest > 1e-10 {
        return Err(FeshbachError::Nesting(nest));
    }
    let p1 = FeshbachPair::with_chibar(h.clone(), tau1.clone(), chi1.clone(), chibar1.clone())?;
    let p2 = FeshbachPair::with_chibar(h.clone(), tau2.clone(), chi2.clone(), chibar2.clone())?;
    let f1 = smooth_feshbach(&p1);
    let p12 = FeshbachPair::with_chibar(f1, tau2.clone(), chi2.clone(), chibar2.clone())?;
    let (f2, f12) = (smooth_feshbach(&p2), smooth_feshbach(&p12));
    let (q1, qs1) = intertwiners(&p1);
    let (q2, qs2) = intertwiners(&p2);
    let (q12, qs12) = intertwiners(&p12);
    let scale = 1.0 + max_abs(h);
    let n = h.nrows();
    let a = {
        let basis = range_basis(&(chi1 - CMat::identity(n, n) * Complex64::new(1.0 - 1e-9, 0.0)), 0.0);
        (basis.ncols() > 0).then(|| &basis * basis.adjoint())
    };
    Ok(CompositionReport {
        f: max_abs(&(&f2 - &f12)) / scale,
        q: max_abs(&(&q2 - &q1 * &q12)),
        qsharp: max_abs(&(&qs2 - &qs12 * &qs1)),
        aq: a.map(|a| max_abs(&(&a * &q2 - &a * &q12))),
    })
}

/// `∂F = Q♯ ∂H Q` for a family with `∂χ = ∂τ = 0`.
pub fn feshbach_derivative(p: &FeshbachPair, dh: &CMat) -> Result<CMat, FeshbachError> {
    if dh.shape() != p.h.shape() {
        return Err(FeshbachError::Dimension("dH shape".into()));
    }
    let (q, qs) = intertwiners(p);
    Ok(qs * dh * q)
}

#[derive(Clone, Debug)]
pub struct DerivativeReport {
    pub steps: Vec<f64>,
    /// Central-difference error of `F` against `Q♯VQ` at each step.
    pub f_errors: Vec<f64>,
    /// Central-difference error of `Q` against `−χ̄R̄χ̄VQ`.
    pub q_errors: Vec<f64>,
    pub f_order: f64,
    pub q_order: f64,
}

fn observed_order(h: &[f64], e: &[f64]) -> f64 {
    let k = h.len();
    let (mx, my) = (
        h.iter().map(|x| x.ln()).sum::<f64>() / k as f64,
        e.iter().map(|x| x.max(1e-300).ln()).sum::<f64>() / k as f64,
    );
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (x, y) in h.iter().zip(e) {
        let (dx, dy) = (x.ln() - mx, y.max(1e-300).ln() - my);
        sxy += dx * dy;
        sxx += dx * dx;
    }
    sxy / sxx
}

/// Finite-difference check along `H(s) = H + sV` over the given steps.
pub fn check_derivative(p: &FeshbachPair, v: &CMat, steps: &[f64]) -> Result<DerivativeReport, FeshbachError> {
    if steps.len() < 2 {
        return Err(FeshbachError::Hypothesis("need at least two step sizes".into()));
    }
    let df = feshbach_derivative(p, v)?;
    let (q, _) = intertwiners(p);
    let dq = -(&p.chibar * p.rbar() * &p.chibar * v * &q);
    let (mut f_errors, mut q_errors) = (Vec::new(), Vec::new());
    for &h in steps {
        let plus = p.with_h(&p.h + v * Complex64::new(h, 0.0))?;
        let minus = p.with_h(&p.h - v * Complex64::new(h, 0.0))?;
        let inv = Complex64::new(0.5 / h, 0.0);
        let fd = (smooth_feshbach(&plus) - smooth_feshbach(&minus)) * inv;
        let qd = (intertwiners(&plus).0 - intertwiners(&minus).0) * inv;
        f_errors.push(max_abs(&(fd - &df)));
        q_errors.push(max_abs(&(qd - &dq)));
    }
    Ok(DerivativeReport {
        f_order: observed_order(steps, &f_errors),
        q_order: observed_order(steps, &q_errors),
        steps: steps.to_vec(),
        f_errors,
        q_errors,
    })
}
