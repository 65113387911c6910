//! Product quadrature over photon momenta: Gauss–Legendre panels in `|k|`,
//! Gauss–Legendre in `cos θ`, uniform in `φ`.

use gauss_quad::GaussLegendre;
use std::f64::consts::PI;
use std::num::NonZeroUsize;

fn gl(n: usize) -> Vec<(f64, f64)> {
    GaussLegendre::new(NonZeroUsize::new(n.max(1)).unwrap())
        .as_node_weight_pairs()
        .to_vec()
}

#[derive(Clone, Debug)]
pub struct SphereRule {
    radial: Vec<(f64, f64)>,
    /// Unit directions with their solid-angle weights.
    pub dirs: Vec<([f64; 3], f64)>,
}

impl SphereRule {
    pub fn new(radial_order: usize, n_u: usize, n_phi: usize) -> Self {
        let mut dirs = Vec::with_capacity(n_u * n_phi);
        for (u, wu) in gl(n_u) {
            let s = (1.0 - u * u).max(0.0).sqrt();
            for j in 0..n_phi {
                let phi = 2.0 * PI * (j as f64 + 0.5) / n_phi as f64;
                dirs.push(([s * phi.cos(), s * phi.sin(), u], wu * 2.0 * PI / n_phi as f64));
            }
        }
        Self {
            radial: gl(radial_order),
            dirs,
        }
    }

    /// Radial nodes and weights (including `k²`) on `[lo, hi]`, split at
    /// the given breakpoints.
    pub fn radial(&self, lo: f64, hi: f64, breaks: &[f64]) -> Vec<(f64, f64)> {
        let mut pts = Vec::new();
        if !(hi > lo) {
            return pts;
        }
        let mut cuts: Vec<f64> = breaks.iter().copied().filter(|&b| b > lo && b < hi).collect();
        cuts.push(lo);
        cuts.push(hi);
        cuts.sort_by(|a, b| a.total_cmp(b));
        cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
        pts.reserve((cuts.len() - 1) * self.radial.len());
        for w in cuts.windows(2) {
            let (mid, half) = (0.5 * (w[0] + w[1]), 0.5 * (w[1] - w[0]));
            for &(x, wx) in &self.radial {
                let k = mid + half * x;
                pts.push((k, wx * half * k * k));
            }
        }
        pts
    }

    pub fn size(&self) -> usize {
        self.radial.len() * self.dirs.len()
    }
}

/// Quadrature resolution for the photon integrals of one step.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadSpec {
    pub radial_order: usize,
    pub n_u: usize,
    pub n_phi: usize,
    /// Coarser rule per photon for the two-contraction terms.
    pub pair_radial_order: usize,
    pub pair_n_u: usize,
    pub pair_n_phi: usize,
}

impl Default for QuadSpec {
    fn default() -> Self {
        Self {
            radial_order: 8,
            n_u: 8,
            n_phi: 8,
            pair_radial_order: 3,
            pair_n_u: 4,
            pair_n_phi: 3,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Rules {
    pub single: SphereRule,
    pub pair: SphereRule,
}

impl Rules {
    pub fn new(q: &QuadSpec) -> Self {
        Self {
            single: SphereRule::new(q.radial_order, q.n_u, q.n_phi),
            pair: SphereRule::new(q.pair_radial_order, q.pair_n_u, q.pair_n_phi),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_ball_moments() {
        let r = SphereRule::new(6, 6, 6);
        let mut vol = 0.0;
        let mut z2 = 0.0;
        for (k, w) in r.radial(0.0, 1.0, &[0.3]) {
            for (d, wd) in &r.dirs {
                vol += w * wd;
                z2 += w * wd * (k * d[2]).powi(2);
            }
        }
        assert!((vol - 4.0 * PI / 3.0).abs() < 1e-12);
        assert!((z2 - 4.0 * PI / 15.0).abs() < 1e-12);
    }
}
