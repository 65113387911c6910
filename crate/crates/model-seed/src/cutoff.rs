//! Infrared/ultraviolet photon cutoff `κ_σ`, the partition profile `Θ` and
//! the Feshbach pair `χ₁`, `χ̄₁`, `χ_ρ`.

use crate::{CutoffSpec, SeedError};
use pauli_kernels::PhotonArg;
use std::f64::consts::FRAC_PI_2;

/// Quintic smoothstep: 0 below 0, 1 above 1, `C²` at both ends.
pub fn smoothstep(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else if t >= 1.0 {
        1.0
    } else {
        t * t * t * (10.0 - 15.0 * t + 6.0 * t * t)
    }
}

/// UV bridge: 1 on `[0, ½]`, smooth descent on `(½, 1)`, 0 from 1 on.
pub fn uv_bridge(x: f64) -> f64 {
    1.0 - smoothstep(2.0 * x - 1.0)
}

/// `κ_σ(x) = min((x/σ)^K, 1)·b(x)` with `b` the UV bridge.
pub fn cutoff_kappa(x: f64, spec: &CutoffSpec) -> Result<f64, SeedError> {
    spec.validate()?;
    Ok(kappa_unchecked(x, spec.sigma, spec.kexp))
}

/// `κ_σ(x)` without parameter validation.
pub fn kappa_unchecked(x: f64, sigma: f64, kexp: u32) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    let ir = if x < sigma { (x / sigma).powi(kexp as i32) } else { 1.0 };
    ir * uv_bridge(x)
}

/// `Θ`: 1 on `[0, ¾]`, 0 from 1 on, smoothstep in between.
pub fn theta_profile(x: f64) -> f64 {
    1.0 - smoothstep(4.0 * x - 3.0)
}

pub fn chi1(x: f64) -> f64 {
    (FRAC_PI_2 * theta_profile(x)).sin()
}

pub fn chi1_bar(x: f64) -> f64 {
    (FRAC_PI_2 * theta_profile(x)).cos()
}

pub fn chi_rho(x: f64, rho: f64) -> f64 {
    chi1(x / rho)
}

pub fn chi_rho_bar(x: f64, rho: f64) -> f64 {
    chi1_bar(x / rho)
}

/// Density of the photon measure w.r.t. `d|k| dθ dφ` per slot: `κ_σ/√|k|`
/// times `|k|² sin θ` for `σ ≤ 1`; for `σ > 1` the cutoff is absorbed into
/// the kernels and only `|k|^{3/2} sin θ` remains.
pub fn measure_weight(args: &[PhotonArg], spec: &CutoffSpec) -> Result<f64, SeedError> {
    if !(spec.sigma > 0.0) || spec.kexp == 0 {
        return Err(SeedError::Cutoff(format!("sigma = {}, K = {}", spec.sigma, spec.kexp)));
    }
    let mut w = 1.0;
    for a in args {
        if !(a.kmag > 0.0) {
            return Err(SeedError::ZeroMomentum(a.kmag));
        }
        let geo = a.kmag * a.kmag * a.ktheta.sin();
        let cut = if spec.sigma <= 1.0 {
            kappa_unchecked(a.kmag, spec.sigma, spec.kexp)
        } else {
            1.0
        };
        w *= cut / a.kmag.sqrt() * geo;
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_is_normalized() {
        for i in 0..=200 {
            let x = i as f64 / 150.0;
            assert!((chi1(x).powi(2) + chi1_bar(x).powi(2) - 1.0).abs() < 1e-15);
        }
        assert_eq!(chi1(0.75), 1.0);
        assert_eq!(chi1(1.0), 0.0);
    }

    #[test]
    fn smoothstep_is_monotone() {
        let v: Vec<f64> = (0..=100).map(|i| smoothstep(i as f64 / 100.0)).collect();
        assert!(v.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(smoothstep(0.5), 0.5);
    }
}
