//! Dilation `w̃ ↦ α⁻¹ ρ^e w̃[ρX; ρK]` of gridded kernels.

use pauli_kernels::{eval_kernel, KernelError, PhotonArg, SpectralPoint, WickKernel, ZeroLimit};

/// `α⁻¹ρ^{M+N−1}` for `σ ≤ 1`, `α⁻¹ρ^{2(M+N)−1}` for `σ > 1`.
pub fn rescale_prefactor(degree: usize, rho: f64, alpha: f64, sigma: f64) -> f64 {
    let d = degree as i32;
    let e = if sigma <= 1.0 { d - 1 } else { 2 * d - 1 };
    rho.powi(e) / alpha
}

fn clamp(v: f64, lo: f64, hi: f64) -> f64 {
    v.clamp(lo, hi)
}

fn scaled_point(k: &WickKernel, p: &SpectralPoint, rho: f64) -> SpectralPoint {
    let ax = &k.x;
    SpectralPoint::from_reduced(
        clamp(rho * p.x0, ax.x0.lo(), ax.x0.hi()),
        clamp(rho * p.xpar, ax.xpar.lo(), ax.xpar.hi()),
        clamp(rho * p.xperp(), ax.xperp.lo(), ax.xperp.hi()),
    )
}

fn scaled_args(k: &WickKernel, args: &[PhotonArg], rho: f64) -> Vec<PhotonArg> {
    args.iter()
        .zip(&k.slots)
        .map(|(a, s)| PhotonArg::new(clamp(rho * a.kmag, s.kmag.lo(), s.kmag.hi()), a.ktheta, a.kphi, a.lambda))
        .collect()
}

/// Rescaled kernel on the grid of `w`.  Arguments `ρX`, `ρK` falling
/// outside the grid hull are clamped to it; zero-momentum limits are
/// carried along.
pub fn rescale(w: &WickKernel, rho: f64, alpha: f64, sigma: f64) -> Result<WickKernel, KernelError> {
    let pref = rescale_prefactor(w.m + w.n, rho, alpha, sigma);
    let mut err = None;
    let mut out = WickKernel::from_fn(w.m, w.n, w.x.clone(), w.slots.clone(), |p, args| {
        match eval_kernel(w, &scaled_point(w, p, rho), &scaled_args(w, args, rho)) {
            Ok(v) => v * pref,
            Err(e) => {
                err.get_or_insert(e);
                Default::default()
            }
        }
    })?;
    if let Some(e) = err {
        return Err(e);
    }
    out.scalar = w.scalar;
    for z in &w.zero_limit {
        out.zero_limit.push(rescale_zero_limit(w, z, rho, pref)?);
    }
    Ok(out)
}

fn rescale_zero_limit(w: &WickKernel, z: &ZeroLimit, rho: f64, pref: f64) -> Result<ZeroLimit, KernelError> {
    let mut slots = w.slots.clone();
    slots.remove(z.slot);
    let (m, n) = if z.slot < w.m { (w.m - 1, w.n) } else { (w.m, w.n - 1) };
    let mut comps = Vec::with_capacity(3);
    for c in 0..3 {
        let mut part = WickKernel::zeros(m, n, w.x.clone(), slots.clone())?;
        part.values = z.values.iter().map(|v| v[c]).collect();
        comps.push(rescale(&part, rho, 1.0, 1.0)?);
    }
    // Undo the part's own prefactor, apply the full one.
    let own = rescale_prefactor(m + n, rho, 1.0, 1.0);
    let values = (0..z.values.len())
        .map(|i| [0, 1, 2].map(|c| comps[c].values[i] * (pref / own)))
        .collect();
    Ok(ZeroLimit { slot: z.slot, values })
}
