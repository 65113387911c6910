//! 2×2 complex matrices in the Pauli basis `w0·1 + w⃗·τ⃗`.

use num_complex::Complex64;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct PauliValue {
    pub w0: Complex64,
    pub wvec: [Complex64; 3],
}

impl PauliValue {
    pub const ZERO: PauliValue = PauliValue {
        w0: ZERO,
        wvec: [ZERO; 3],
    };

    pub fn new(w0: Complex64, wvec: [Complex64; 3]) -> Self {
        Self { w0, wvec }
    }

    pub fn scalar(c: Complex64) -> Self {
        Self { w0: c, wvec: [ZERO; 3] }
    }

    pub fn real_scalar(c: f64) -> Self {
        Self::scalar(Complex64::new(c, 0.0))
    }

    pub fn identity() -> Self {
        Self::real_scalar(1.0)
    }

    /// Pauli matrix `τ_{i+1}`.
    pub fn tau(i: usize) -> Self {
        let mut wvec = [ZERO; 3];
        wvec[i] = Complex64::new(1.0, 0.0);
        Self { w0: ZERO, wvec }
    }

    pub fn to_matrix(&self) -> [[Complex64; 2]; 2] {
        let [w1, w2, w3] = self.wvec;
        [
            [self.w0 + w3, w1 - I * w2],
            [w1 + I * w2, self.w0 - w3],
        ]
    }

    pub fn adjoint(&self) -> Self {
        Self {
            w0: self.w0.conj(),
            wvec: self.wvec.map(|c| c.conj()),
        }
    }

    pub fn is_scalar(&self) -> bool {
        self.wvec.iter().all(|c| *c == ZERO)
    }

    /// Euclidean norm of the vector part, `(Σ|w_i|²)^{1/2}`.
    pub fn vector_norm(&self) -> f64 {
        self.wvec.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `√(Tr A*A) = √2 · (|w0|² + |w⃗|²)^{1/2}`.
    pub fn frobenius(&self) -> f64 {
        (2.0 * (self.w0.norm_sqr() + self.wvec.iter().map(|c| c.norm_sqr()).sum::<f64>())).sqrt()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            w0: self.w0 * c,
            wvec: self.wvec.map(|x| x * c),
        }
    }

    pub fn scale_re(&self, c: f64) -> Self {
        Self {
            w0: self.w0 * c,
            wvec: self.wvec.map(|x| x * c),
        }
    }

    /// Similarity transform `U A U*` for `U = τ_{axis+1}`.
    pub fn conjugate_by_tau(&self, axis: usize) -> Self {
        let mut out = *self;
        for (j, c) in out.wvec.iter_mut().enumerate() {
            if j != axis {
                *c = -*c;
            }
        }
        out
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).frobenius()
    }
}

/// Decomposition of a 2×2 complex matrix into its scalar and vector parts.
pub fn pauli_decompose(m: [[Complex64; 2]; 2]) -> PauliValue {
    let half = 0.5;
    PauliValue {
        w0: (m[0][0] + m[1][1]) * half,
        wvec: [
            (m[0][1] + m[1][0]) * half,
            I * (m[0][1] - m[1][0]) * half,
            (m[0][0] - m[1][1]) * half,
        ],
    }
}

impl Add for PauliValue {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self {
            w0: self.w0 + o.w0,
            wvec: [self.wvec[0] + o.wvec[0], self.wvec[1] + o.wvec[1], self.wvec[2] + o.wvec[2]],
        }
    }
}

impl Sub for PauliValue {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self {
            w0: self.w0 - o.w0,
            wvec: [self.wvec[0] - o.wvec[0], self.wvec[1] - o.wvec[1], self.wvec[2] - o.wvec[2]],
        }
    }
}

impl Neg for PauliValue {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale_re(-1.0)
    }
}

impl AddAssign for PauliValue {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl SubAssign for PauliValue {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl Mul<f64> for PauliValue {
    type Output = Self;
    fn mul(self, c: f64) -> Self {
        self.scale_re(c)
    }
}

impl Mul<Complex64> for PauliValue {
    type Output = Self;
    fn mul(self, c: Complex64) -> Self {
        self.scale(c)
    }
}

/// Matrix product via `(a0 + a⃗·τ⃗)(b0 + b⃗·τ⃗) = a0b0 + a⃗·b⃗ + (a0b⃗ + b0a⃗ + i a⃗×b⃗)·τ⃗`.
impl Mul for PauliValue {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let a = self.wvec;
        let b = o.wvec;
        let dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
        let cross = [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ];
        Self {
            w0: self.w0 * o.w0 + dot,
            wvec: [
                self.w0 * b[0] + o.w0 * a[0] + I * cross[0],
                self.w0 * b[1] + o.w0 * a[1] + I * cross[1],
                self.w0 * b[2] + o.w0 * a[2] + I * cross[2],
            ],
        }
    }
}

impl std::iter::Sum for PauliValue {
    fn sum<It: Iterator<Item = Self>>(iter: It) -> Self {
        iter.fold(PauliValue::ZERO, |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn product_matches_matrix_product() {
        let a = PauliValue::new(c(0.3, -0.1), [c(1.0, 0.5), c(-0.2, 0.0), c(0.0, 0.7)]);
        let b = PauliValue::new(c(-1.1, 0.4), [c(0.1, 0.2), c(0.9, -0.3), c(0.4, 0.0)]);
        let (ma, mb) = (a.to_matrix(), b.to_matrix());
        let mut mc = [[ZERO; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    mc[i][j] += ma[i][k] * mb[k][j];
                }
            }
        }
        let p = (a * b).to_matrix();
        for i in 0..2 {
            for j in 0..2 {
                assert!((p[i][j] - mc[i][j]).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn tau_conjugation_flips_transverse_components() {
        let a = PauliValue::new(c(0.2, 0.0), [c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]);
        let u = PauliValue::tau(1);
        let direct = u * a * u.adjoint();
        assert!(direct.max_abs_diff(&a.conjugate_by_tau(1)) < 1e-14);
    }
}
