//! Evaluation interface shared by the seed and all renormalized scales.

use num_complex::Complex64;
use pauli_kernels::{PauliValue, PolarizationModel, SpectralPoint};

/// Full spectral point `(X0, X⃗)`, with `n⃗_p` along `ẑ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct XPoint {
    pub x0: f64,
    pub v: [f64; 3],
}

impl XPoint {
    pub const ORIGIN: XPoint = XPoint { x0: 0.0, v: [0.0; 3] };

    pub fn new(x0: f64, v: [f64; 3]) -> Self {
        Self { x0, v }
    }

    /// `X + K` for a photon of momentum `k⃗`: `(X0 + |k|, X⃗ + k⃗)`.
    pub fn plus(&self, k: &[f64; 3]) -> Self {
        Self {
            x0: self.x0 + norm3(k),
            v: [self.v[0] + k[0], self.v[1] + k[1], self.v[2] + k[2]],
        }
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            x0: s * self.x0,
            v: self.v.map(|c| s * c),
        }
    }

    /// Reduced coordinates in the canonical frame (`X⃗⊥` along `x̂`).
    pub fn reduced(&self) -> SpectralPoint {
        SpectralPoint {
            x0: self.x0,
            xpar: self.v[2],
            xperp2: self.v[0] * self.v[0] + self.v[1] * self.v[1],
        }
    }

    pub fn from_reduced(p: &SpectralPoint) -> Self {
        Self::new(p.x0, p.vector())
    }
}

pub fn norm3(k: &[f64; 3]) -> f64 {
    (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt()
}

/// `w_{0,1}(X; k, λ) = Σ_i ε_i V_i(X, k)`.
pub type VForm = [PauliValue; 3];
/// `w(X; k_a, k_b) = Σ_ij ε_i(k_a) M_ij ε_j(k_b)`.
pub type MForm = [[PauliValue; 3]; 3];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Degree2 {
    /// One creator (`k_a`) and one annihilator (`k_b`).
    D11,
    /// Two annihilators; `(2,0)` is its adjoint.
    D02,
}

pub trait KernelSource: Send + Sync {
    fn polarization(&self) -> PolarizationModel;
    /// Signed total momentum along `ẑ`.
    fn momentum(&self) -> f64;
    fn coupling(&self) -> f64;
    /// Photon contraction weight per `d³k`, including the `1/|k|` of the
    /// field normalization.
    fn contraction_weight(&self, k: f64) -> f64;
    /// `σ_c/σ` in the stored convention above `σ = 1`, else 1.
    fn mu(&self) -> f64;
    /// Whether interactions enter as `χ₁ W χ₁` and the energy as `E χ₁²`.
    fn wrapped(&self) -> bool;
    /// Degree-0 free part `T(r; X)`, including `X0`.
    fn free(&self, r: f64, x: &XPoint) -> PauliValue;
    fn v01(&self, x: &XPoint, k: &[f64; 3]) -> VForm;
    fn w2(&self, kind: Degree2, x: &XPoint, ka: &[f64; 3], kb: &[f64; 3]) -> MForm;

    /// Location of the infrared kink of the contraction weight, if inside
    /// the photon ball.
    fn ir_scale(&self) -> Option<f64> {
        None
    }

    /// Coefficient of `X_∥` in the free part at spectral parameter `r`.
    fn beta(&self, _r: f64) -> f64 {
        -self.momentum()
    }

    /// Scalar part of the degree-0 kernel, `E χ₁² + T`.
    fn h0(&self, r: f64, x: &XPoint) -> f64 {
        let t = self.free(r, x).w0.re;
        if self.wrapped() {
            let c = crate::chi1(x.x0);
            r * c * c + t
        } else {
            r + t
        }
    }
}

pub fn dot_v(eps: &[f64; 3], v: &VForm) -> PauliValue {
    v[0] * eps[0] + v[1] * eps[1] + v[2] * eps[2]
}

pub fn dot_m(ea: &[f64; 3], m: &MForm, eb: &[f64; 3]) -> PauliValue {
    let mut acc = PauliValue::ZERO;
    for i in 0..3 {
        for j in 0..3 {
            let c = ea[i] * eb[j];
            if c != 0.0 {
                acc += m[i][j] * c;
            }
        }
    }
    acc
}

pub fn adjoint_v(v: &VForm) -> VForm {
    [v[0].adjoint(), v[1].adjoint(), v[2].adjoint()]
}

/// `M ↦ M^†` entrywise with transposed indices, the `(2,0)` partner of a
/// `(0,2)` kernel.
pub fn adjoint_m(m: &MForm) -> MForm {
    let mut out = [[PauliValue::ZERO; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = m[j][i].adjoint();
        }
    }
    out
}

pub const ZERO_V: VForm = [PauliValue::ZERO; 3];
pub const ZERO_M: MForm = [[PauliValue::ZERO; 3]; 3];

pub(crate) fn scalar_identity(c: f64) -> MForm {
    let mut m = ZERO_M;
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = PauliValue::scalar(Complex64::new(c, 0.0));
    }
    m
}
