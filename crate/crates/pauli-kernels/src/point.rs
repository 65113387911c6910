//! Reduced spectral points and photon arguments.
//!
//! The canonical frame puts `n⃗_p` along `ẑ` and `X⃗⊥` along `x̂`; a photon
//! azimuth `φ` is measured from `X⃗⊥`.

use crate::KernelError;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralPoint {
    pub x0: f64,
    pub xpar: f64,
    pub xperp2: f64,
}

impl SpectralPoint {
    /// Checked constructor enforcing `√(Xpar² + Xperp2) ≤ X0 ≤ 1`.
    pub fn new(x0: f64, xpar: f64, xperp2: f64) -> Result<Self, KernelError> {
        let p = Self { x0, xpar, xperp2 };
        if !(xperp2 >= 0.0) {
            return Err(KernelError::InvalidPoint(format!("Xperp2 = {xperp2} < 0")));
        }
        if x0 > 1.0 + 1e-12 || p.vec_norm() > x0 + 1e-12 {
            return Err(KernelError::InvalidPoint(format!(
                "need |X| <= X0 <= 1, got X0 = {x0}, |X| = {}",
                p.vec_norm()
            )));
        }
        Ok(p)
    }

    /// Grid-node constructor; nodes outside the physical cone are allowed.
    pub fn from_reduced(x0: f64, xpar: f64, xperp: f64) -> Self {
        Self {
            x0,
            xpar,
            xperp2: xperp * xperp,
        }
    }

    pub fn origin() -> Self {
        Self {
            x0: 0.0,
            xpar: 0.0,
            xperp2: 0.0,
        }
    }

    pub fn xperp(&self) -> f64 {
        self.xperp2.max(0.0).sqrt()
    }

    pub fn vec_norm(&self) -> f64 {
        (self.xpar * self.xpar + self.xperp2.max(0.0)).sqrt()
    }

    pub fn in_cone(&self) -> bool {
        self.vec_norm() <= self.x0 + 1e-12
    }

    /// `X⃗` in the canonical frame.
    pub fn vector(&self) -> [f64; 3] {
        [self.xperp(), 0.0, self.xpar]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Polarization {
    Plus,
    Minus,
}

impl Polarization {
    pub fn index(self) -> usize {
        match self {
            Polarization::Plus => 0,
            Polarization::Minus => 1,
        }
    }

    pub fn from_index(i: usize) -> Self {
        if i == 0 {
            Polarization::Plus
        } else {
            Polarization::Minus
        }
    }
}

/// Which polarization vectors a photon slot carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolarizationModel {
    /// Two transverse vectors `θ̂`, `φ̂` (QED).
    Transverse,
    /// The radial unit vector `k̂` only (scalar Nelson model).
    Longitudinal,
}

impl PolarizationModel {
    pub fn count(self) -> usize {
        match self {
            PolarizationModel::Transverse => 2,
            PolarizationModel::Longitudinal => 1,
        }
    }

    /// `Σ_λ ε_i ε_j` as a function of the unit vector `k̂`.
    pub fn projector(self, khat: [f64; 3]) -> [[f64; 3]; 3] {
        let mut p = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                let kk = khat[i] * khat[j];
                p[i][j] = match self {
                    PolarizationModel::Transverse => (if i == j { 1.0 } else { 0.0 }) - kk,
                    PolarizationModel::Longitudinal => kk,
                };
            }
        }
        p
    }

    /// Polarization vector for direction `(θ, φ)` and label `λ`.
    pub fn vector(self, theta: f64, phi: f64, lambda: Polarization) -> [f64; 3] {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        match (self, lambda) {
            (PolarizationModel::Longitudinal, _) => [st * cp, st * sp, ct],
            (PolarizationModel::Transverse, Polarization::Plus) => [ct * cp, ct * sp, -st],
            (PolarizationModel::Transverse, Polarization::Minus) => [-sp, cp, 0.0],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhotonArg {
    pub kmag: f64,
    pub ktheta: f64,
    pub kphi: f64,
    pub lambda: Polarization,
}

impl PhotonArg {
    pub fn new(kmag: f64, ktheta: f64, kphi: f64, lambda: Polarization) -> Self {
        Self {
            kmag,
            ktheta,
            kphi,
            lambda,
        }
    }

    pub fn direction(&self) -> [f64; 3] {
        let (st, ct) = self.ktheta.sin_cos();
        let (sp, cp) = self.kphi.sin_cos();
        [st * cp, st * sp, ct]
    }

    pub fn momentum(&self) -> [f64; 3] {
        self.direction().map(|c| c * self.kmag)
    }

    pub fn polarization(&self, model: PolarizationModel) -> [f64; 3] {
        model.vector(self.ktheta, self.kphi, self.lambda)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transverse_vectors_complete_an_orthonormal_frame() {
        let (t, f) = (0.7, 2.1);
        let k = PhotonArg::new(1.0, t, f, Polarization::Plus).direction();
        let e1 = PolarizationModel::Transverse.vector(t, f, Polarization::Plus);
        let e2 = PolarizationModel::Transverse.vector(t, f, Polarization::Minus);
        let dot = |a: [f64; 3], b: [f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
        assert!(dot(k, e1).abs() < 1e-15 && dot(k, e2).abs() < 1e-15 && dot(e1, e2).abs() < 1e-15);
        let p = PolarizationModel::Transverse.projector(k);
        for i in 0..3 {
            for j in 0..3 {
                assert!((p[i][j] - (e1[i] * e1[j] + e2[i] * e2[j])).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn checked_point_rejects_outside_cone() {
        assert!(SpectralPoint::new(0.5, 0.4, 0.1).is_err());
        assert!(SpectralPoint::new(0.5, 0.3, 0.1).is_ok());
    }
}
