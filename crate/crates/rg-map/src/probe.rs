//! A constant-coupling test source: `w₀₁(X; k) = c` for the single
//! longitudinal polarization, no degree-2 part, `T = X0`.  Its decimation
//! integrals reduce to one-dimensional radial integrals, which makes it the
//! reference case for quadrature and dense-matrix oracles.

use model_seed::{norm3, Degree2, KernelSource, MForm, VForm, XPoint, ZERO_M, ZERO_V};
use num_complex::Complex64;
use pauli_kernels::{PauliValue, PolarizationModel};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConstantSource {
    pub c: f64,
}

impl KernelSource for ConstantSource {
    fn polarization(&self) -> PolarizationModel {
        PolarizationModel::Longitudinal
    }

    fn momentum(&self) -> f64 {
        0.0
    }

    fn coupling(&self) -> f64 {
        self.c
    }

    fn contraction_weight(&self, k: f64) -> f64 {
        1.0 / k
    }

    fn mu(&self) -> f64 {
        1.0
    }

    fn wrapped(&self) -> bool {
        true
    }

    fn free(&self, _r: f64, x: &XPoint) -> PauliValue {
        PauliValue::scalar(Complex64::new(x.x0, 0.0))
    }

    fn v01(&self, _x: &XPoint, k: &[f64; 3]) -> VForm {
        let n = norm3(k);
        if n == 0.0 {
            return ZERO_V;
        }
        k.map(|c| PauliValue::scalar(Complex64::new(self.c * c / n, 0.0)))
    }

    fn w2(&self, _kind: Degree2, _x: &XPoint, _ka: &[f64; 3], _kb: &[f64; 3]) -> MForm {
        ZERO_M
    }
}
