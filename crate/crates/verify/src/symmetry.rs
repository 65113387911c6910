//! Scalar symmetry of the degree-0 data and the reflection relation under
//! `z ↦ −z`, `p ↦ −p`.
//!
//! Under the reflection `R = diag(1, 1, −1)` spin transforms as a
//! pseudovector, which is conjugation by `τ₃`:
//! `T(X; −p) = τ₃ T(RX; p) τ₃` and `V_i(X, k; −p) = R_ii τ₃ V_i(RX, Rk; p) τ₃`.

use crate::report::{CheckReport, Worst};
use model_seed::{Degree2, KernelSource, MForm, VForm, XPoint};
use pauli_kernels::{PauliValue, PolarizationModel, XAxes};
use rg_map::KernelSequence;
use std::sync::Arc;

fn cone_points(axes: &XAxes) -> Vec<XPoint> {
    let mut out = Vec::new();
    for &x0 in &axes.x0.nodes {
        for &xpar in &axes.xpar.nodes {
            for &xperp in &axes.xperp.nodes {
                if xpar * xpar + xperp * xperp <= x0 * x0 * (1.0 + 1e-12) {
                    out.push(XPoint::new(x0, [xperp, 0.0, xpar]));
                }
            }
        }
    }
    out
}

/// Largest vector part of `T(0; X)` over the grid points of `axes`
/// inside the forward cone.
pub fn check_scalar_symmetry(seq: &KernelSequence, axes: &XAxes, tol: f64) -> CheckReport {
    let src = seq.source();
    let mut w = Worst::default();
    for x in cone_points(axes) {
        let v = src.free(0.0, &x).vector_norm();
        w.push(v, || format!("X0={} X={:?}", x.x0, x.v));
    }
    CheckReport::new("scalar symmetry of degree 0", w.value, tol, w.at.into_iter().collect())
}

fn reflect(v: &[f64; 3]) -> [f64; 3] {
    [v[0], v[1], -v[2]]
}

fn conj(v: PauliValue) -> PauliValue {
    v.conjugate_by_tau(2)
}

/// Compares a sequence at momentum `−p` with its mirror at `+p` on the
/// cone points of `axes`, for degree 0 and degree 1 (photon momenta of
/// magnitude `kmag` along a few directions).
pub fn check_reflection(minus: &KernelSequence, plus: &KernelSequence, axes: &XAxes, kmag: f64, tol: f64) -> CheckReport {
    let (a, b) = (minus.source(), plus.source());
    let sign = [1.0, 1.0, -1.0];
    let dirs = [[0.0, 0.0, 1.0], [0.6, 0.0, 0.8], [0.0, 0.8, -0.6], [1.0, 0.0, 0.0]];
    let mut w = Worst::default();
    for x in cone_points(axes) {
        let rx = XPoint::new(x.x0, reflect(&x.v));
        let d0 = a.free(0.0, &x).max_abs_diff(&conj(b.free(0.0, &rx)));
        w.push(d0, || format!("deg 0 X0={} X={:?}", x.x0, x.v));
        if x.x0 + kmag > 0.75 {
            continue;
        }
        for d in &dirs {
            let k = d.map(|c| kmag * c);
            let va: VForm = a.v01(&x, &k);
            let vb: VForm = b.v01(&rx, &reflect(&k));
            for i in 0..3 {
                let d1 = va[i].max_abs_diff(&(conj(vb[i]) * sign[i]));
                w.push(d1, || format!("deg 1 comp {i} X0={} X={:?} k={k:?}", x.x0, x.v));
            }
            let ma: MForm = a.w2(Degree2::D11, &x, &k, &k);
            let mb: MForm = b.w2(Degree2::D11, &rx, &reflect(&k), &reflect(&k));
            for i in 0..3 {
                for j in 0..3 {
                    let d2 = ma[i][j].max_abs_diff(&(conj(mb[i][j]) * (sign[i] * sign[j])));
                    w.push(d2, || format!("deg 2 ({i},{j}) X0={} X={:?} k={k:?}", x.x0, x.v));
                }
            }
        }
    }
    CheckReport::new("reflection relation", w.value, tol, w.at.into_iter().collect())
}

/// Negative control: adds `a τ₃` to the free part of a base source.
pub struct InjectedTau3 {
    pub inner: Arc<dyn KernelSource>,
    pub a: f64,
}

impl InjectedTau3 {
    /// The seed of `seq` with the perturbation; `seq` must be unrenormalized.
    pub fn wrap(seq: &KernelSequence, a: f64) -> Option<KernelSequence> {
        let rg_map::LevelRef::Base(inner) = &seq.level else { return None };
        let src: Arc<dyn KernelSource> = Arc::new(Self { inner: inner.clone(), a });
        let mut out = seq.clone();
        out.level = rg_map::LevelRef::Base(src);
        Some(out)
    }
}

impl KernelSource for InjectedTau3 {
    fn polarization(&self) -> PolarizationModel {
        self.inner.polarization()
    }
    fn momentum(&self) -> f64 {
        self.inner.momentum()
    }
    fn coupling(&self) -> f64 {
        self.inner.coupling()
    }
    fn contraction_weight(&self, k: f64) -> f64 {
        self.inner.contraction_weight(k)
    }
    fn mu(&self) -> f64 {
        self.inner.mu()
    }
    fn wrapped(&self) -> bool {
        self.inner.wrapped()
    }
    fn ir_scale(&self) -> Option<f64> {
        self.inner.ir_scale()
    }
    fn beta(&self, r: f64) -> f64 {
        self.inner.beta(r)
    }
    fn h0(&self, r: f64, x: &XPoint) -> f64 {
        self.inner.h0(r, x)
    }
    fn free(&self, r: f64, x: &XPoint) -> PauliValue {
        self.inner.free(r, x) + PauliValue::tau(2) * self.a
    }
    fn v01(&self, x: &XPoint, k: &[f64; 3]) -> VForm {
        self.inner.v01(x, k)
    }
    fn w2(&self, kind: Degree2, x: &XPoint, ka: &[f64; 3], kb: &[f64; 3]) -> MForm {
        self.inner.w2(kind, x, ka, kb)
    }
}
