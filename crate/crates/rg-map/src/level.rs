//! Scales as lazily evaluated kernels.
//!
//! A renormalized scale keeps the previous scale and the data produced by
//! the step (Chebyshev interpolants in `r`, Taylor data and a residual grid
//! for the degree-0 correction).  Kernels are evaluated on demand by
//! transporting the previous scale's kernels.  Quantities depending on the
//! spectral parameter are frozen into a [`Chain`] once per `r`, so that a
//! quadrature loop does not re-interpolate at every node.

use crate::cheb::Cheb;
use crate::quad::Rules;
use model_seed::{
    adjoint_v, chi1, chi_rho, kappa_unchecked, Degree2, KernelSource, MForm, VForm, XPoint, ZERO_M, ZERO_V,
};
use num_complex::Complex64;
use pauli_kernels::{PauliValue, PolarizationModel};
use std::sync::Arc;

#[derive(Clone)]
pub enum LevelRef {
    /// An explicitly given source (the seed, or a test kernel).
    Base(Arc<dyn KernelSource>),
    Step(Arc<StepLevel>),
}

/// `r`-dependent data of one scale, frozen at a spectral parameter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Link {
    Base(f64),
    Step {
        r_hat: f64,
        r_prev: f64,
        alpha: f64,
        /// Taylor data of the degree-0 correction at `r_prev`.
        tv: f64,
        tg0: f64,
        tgp: f64,
        inv_adil: f64,
    },
}

pub type Chain = Vec<Link>;

fn link_r(l: &Link) -> f64 {
    match *l {
        Link::Base(r) => r,
        Link::Step { r_hat, .. } => r_hat,
    }
}

impl LevelRef {
    pub fn source(&self) -> &dyn KernelSource {
        match self {
            LevelRef::Base(s) => s.as_ref(),
            LevelRef::Step(s) => s.as_ref(),
        }
    }

    pub fn freeze(&self, r: f64) -> Chain {
        match self {
            LevelRef::Base(_) => vec![Link::Base(r)],
            LevelRef::Step(s) => s.freeze_self(r),
        }
    }

    /// Scalar degree-0 kernel `E χ₁² + T` with `E = r` frozen in `chain`.
    pub fn h0_chain(&self, chain: &[Link], y: &XPoint) -> f64 {
        link_r(&chain[0]) + self.h0_shift(chain, y)
    }

    /// `h0 − r`, evaluated without forming `r + (…) − r`: the recursion
    /// divides by `ρ` at every scale and would amplify that rounding.
    pub fn h0_shift(&self, chain: &[Link], y: &XPoint) -> f64 {
        match (self, &chain[0]) {
            (LevelRef::Base(s), Link::Base(r)) => {
                let t = s.free(*r, y).w0.re;
                if s.wrapped() {
                    let c = chi1(y.x0);
                    r * (c * c - 1.0) + t
                } else {
                    t
                }
            }
            (LevelRef::Step(s), Link::Step { r_hat, .. }) => {
                let c = chi1(y.x0);
                r_hat * (c * c - 1.0) + y.x0 + c * c * s.ttilde_scalar(&chain[0], &chain[1..], y)
            }
            _ => unreachable!("chain does not match level"),
        }
    }

    /// Full degree-0 free part `T` (Pauli valued).
    pub fn free_chain(&self, chain: &[Link], y: &XPoint) -> PauliValue {
        match (self, &chain[0]) {
            (LevelRef::Base(s), Link::Base(r)) => s.free(*r, y),
            (LevelRef::Step(s), Link::Step { .. }) => {
                let c = chi1(y.x0);
                let mut t = s.ttilde(&chain[0], &chain[1..], y) * (c * c);
                t.w0 += y.x0;
                t
            }
            _ => unreachable!("chain does not match level"),
        }
    }

    pub fn scale_index(&self) -> Option<usize> {
        match self {
            LevelRef::Base(_) => None,
            LevelRef::Step(s) => Some(s.n),
        }
    }
}

/// Geometry of one decimation: the previous scale, the cutoff `χ_{ρ_c}` and
/// the quadrature rules.
#[derive(Clone)]
pub struct StepCtx {
    pub prev: LevelRef,
    pub rho_c: f64,
    pub rules: Arc<Rules>,
    pub floor: f64,
}

impl StepCtx {
    pub fn wrapped(&self) -> bool {
        self.prev.source().wrapped()
    }

    /// `Υ = τ/(τχ² + χ̄²H)` with `τ = αX0`, given the scalar `H`.
    pub fn upsilon_hp(&self, hp: f64, a: f64, y0: f64) -> f64 {
        if y0 <= 0.75 * self.rho_c {
            return 1.0;
        }
        let c = chi_rho(y0, self.rho_c);
        let (c2, cb2) = (c * c, 1.0 - c * c);
        let tau = a * y0;
        let d = tau * c2 + cb2 * hp;
        if !(d > self.floor) {
            return f64::NAN;
        }
        tau / d
    }

    pub fn upsilon(&self, chain: &[Link], a: f64, y: &XPoint) -> f64 {
        if y.x0 <= 0.75 * self.rho_c {
            return 1.0;
        }
        self.upsilon_hp(self.prev.h0_chain(chain, y), a, y.x0)
    }

    /// Whether the inner factor can be nonzero at content `y0`.
    pub fn in_support(&self, y0: f64) -> bool {
        y0 > 0.75 * self.rho_c && (!self.wrapped() || y0 < 1.0)
    }

    /// Inner factor `χ₁² χ̄²_{ρ_c} / (τχ² + χ̄²H)` (no `χ₁²` for the seed).
    pub fn finner(&self, chain: &[Link], a: f64, y: &XPoint) -> f64 {
        if !self.in_support(y.x0) {
            return 0.0;
        }
        let c = chi_rho(y.x0, self.rho_c);
        let (c2, cb2) = (c * c, 1.0 - c * c);
        let adj = if self.wrapped() { chi1(y.x0).powi(2) } else { 1.0 };
        if cb2 == 0.0 || adj == 0.0 {
            return 0.0;
        }
        let d = a * y.x0 * c2 + cb2 * self.prev.h0_chain(chain, y);
        if !(d > self.floor) {
            return f64::NAN;
        }
        adj * cb2 / d
    }

    /// Radial breakpoints in `|k|` for a photon leaving content `y0`.
    pub fn breaks(&self, y0: f64) -> Vec<f64> {
        let mut b = vec![0.5];
        if let Some(s) = self.prev.source().ir_scale() {
            b.push(s);
        }
        for c in [0.75 * self.rho_c, self.rho_c, 0.75, 1.0] {
            b.push(c - y0);
        }
        b
    }

    /// Radial range of a contracted photon leaving content `y0`.
    pub fn radial_range(&self, y0: f64) -> (f64, f64) {
        let lo = (0.75 * self.rho_c - y0).max(0.0);
        let hi = if self.wrapped() { (1.0 - y0).min(1.0) } else { 1.0 };
        (lo, hi)
    }
}

/// Residual of the degree-0 correction on a box grid in reduced
/// coordinates; vector parts are stored in the frame with `X⃗⊥ ∥ x̂`.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid3 {
    pub n: [usize; 3],
    pub lo: [f64; 3],
    pub hi: [f64; 3],
    pub values: Vec<PauliValue>,
}

impl Grid3 {
    pub fn zeros(n: [usize; 3], lo: [f64; 3], hi: [f64; 3]) -> Self {
        Self {
            n,
            lo,
            hi,
            values: vec![PauliValue::ZERO; n[0] * n[1] * n[2]],
        }
    }

    pub fn node(&self, a: usize, i: usize) -> f64 {
        self.lo[a] + (self.hi[a] - self.lo[a]) * i as f64 / (self.n[a] - 1) as f64
    }

    pub fn index(&self, i: [usize; 3]) -> usize {
        (i[0] * self.n[1] + i[1]) * self.n[2] + i[2]
    }

    fn cell(&self, a: usize, x: f64) -> (usize, f64) {
        let n = self.n[a];
        let t = ((x - self.lo[a]) / (self.hi[a] - self.lo[a])).clamp(0.0, 1.0) * (n - 1) as f64;
        let i = (t.floor() as usize).min(n - 2);
        (i, t - i as f64)
    }

    fn reduced(&self, red: [f64; 3]) -> PauliValue {
        let c: [(usize, f64); 3] = [self.cell(0, red[0]), self.cell(1, red[1]), self.cell(2, red[2])];
        let mut acc = PauliValue::ZERO;
        for m in 0..8 {
            let mut w = 1.0;
            let mut idx = [0; 3];
            for a in 0..3 {
                let up = (m >> a) & 1 == 1;
                idx[a] = c[a].0 + up as usize;
                w *= if up { c[a].1 } else { 1.0 - c[a].1 };
            }
            if w != 0.0 {
                acc += self.values[self.index(idx)] * w;
            }
        }
        acc
    }

    pub fn eval_scalar(&self, x: &XPoint) -> f64 {
        let xp = (x.v[0] * x.v[0] + x.v[1] * x.v[1]).sqrt();
        self.reduced([x.x0, x.v[2], xp]).w0.re
    }

    pub fn eval(&self, x: &XPoint) -> PauliValue {
        let xp = (x.v[0] * x.v[0] + x.v[1] * x.v[1]).sqrt();
        let mut v = self.reduced([x.x0, x.v[2], xp]);
        if xp > 0.0 {
            let (s, c) = (x.v[1] / xp, x.v[0] / xp);
            let (wx, wy) = (v.wvec[0], v.wvec[1]);
            v.wvec[0] = wx * c - wy * s;
            v.wvec[1] = wx * s + wy * c;
        }
        v
    }
}

/// Which cutoff convention a scale uses for photon contractions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Contraction {
    /// `κ_{σ₀}(s|k|)²/|k|` with `s = ρⁿ`.
    Kappa { sigma0: f64, kexp: u32, scale: f64 },
    /// Stored convention above `σ = 1`: `|k|^{2K−1}/σ_c^{2K}`.
    Absorbed { sigma_c: f64, kexp: u32 },
}

impl Contraction {
    pub fn weight(&self, k: f64) -> f64 {
        match *self {
            Contraction::Kappa { sigma0, kexp, scale } => {
                let kap = kappa_unchecked(scale * k, sigma0, kexp);
                kap * kap / k
            }
            Contraction::Absorbed { sigma_c, kexp } => k.powi(2 * kexp as i32 - 1) / sigma_c.powi(2 * kexp as i32),
        }
    }
}

/// Diagnostics recorded while building a step.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct StepReport {
    pub center: f64,
    pub alpha_center: f64,
    /// `|∂_α(rhs)|` at the solution of the `α` equation.
    pub alpha_derivative: f64,
    pub alpha_iterations: usize,
    /// Two-contraction correction to the degree-0 value at the center.
    pub correction2: f64,
    /// L = 2 and L = 3 contributions at the center.
    pub series: [f64; 2],
    pub tail: f64,
    /// Measured `sup ρ_c |F|` on the support.
    pub c_theta: f64,
    /// Forward/inverse round trip of the spectral map on the node set.
    pub roundtrip: f64,
    /// `|ρα ∂_r E_ρ − 1|` on the nodes.
    pub derivative_defect: f64,
}

/// A renormalized scale.
pub struct StepLevel {
    pub ctx: StepCtx,
    /// Scale index; 0 for the output of the first decimation.
    pub n: usize,
    pub dil: f64,
    pub sigma: f64,
    pub mu: f64,
    pub lambda: f64,
    pub contraction: Contraction,
    pub f1: f64,
    pub f2: f64,
    pub center: f64,
    pub alpha_center: f64,
    /// Previous scale frozen at `center`, used by kernel transport.
    pub vchain: Chain,
    pub alpha: Cheb,
    pub jmap: Cheb,
    pub jinv: Cheb,
    pub taylor: [Cheb; 3],
    pub beta: Cheb,
    pub residual: Grid3,
    pub report: StepReport,
    pub zero: bool,
}

impl StepLevel {
    pub fn link(&self, r_hat: f64) -> Link {
        let r_prev = self.jinv.eval(r_hat);
        let alpha = self.alpha.eval(r_prev);
        Link::Step {
            r_hat,
            r_prev,
            alpha,
            tv: self.taylor[0].eval(r_prev),
            tg0: self.taylor[1].eval(r_prev),
            tgp: self.taylor[2].eval(r_prev),
            inv_adil: 1.0 / (alpha * self.dil),
        }
    }

    pub fn freeze_self(&self, r_hat: f64) -> Chain {
        let link = self.link(r_hat);
        let Link::Step { r_prev, .. } = link else { unreachable!() };
        let mut chain = vec![link];
        chain.extend(self.ctx.prev.freeze(r_prev));
        chain
    }

    /// Scalar `T̃(r̂; X)`.  By construction `T̃(r̂; 0) = 0` exactly: the
    /// value at the origin is the spectral map itself and is not recomputed.
    pub(crate) fn ttilde_scalar(&self, link: &Link, rest: &[Link], x: &XPoint) -> f64 {
        let Link::Step { r_prev, alpha, tg0, tgp, inv_adil, .. } = *link else {
            unreachable!()
        };
        let y = x.scaled(self.dil);
        let hs = self.ctx.prev.h0_shift(rest, &y);
        let u = self.ctx.upsilon_hp(r_prev + hs, alpha, y.x0);
        let mut g = u * (hs - alpha * y.x0) + tg0 * y.x0 + tgp * y.v[2];
        if u != 1.0 {
            g += (u - 1.0) * r_prev;
        }
        g += self.residual.eval_scalar(x) - self.residual.eval_scalar(&XPoint::ORIGIN);
        g * inv_adil
    }

    /// Pauli-valued `T̃(r̂; X)`.
    pub(crate) fn ttilde(&self, link: &Link, rest: &[Link], x: &XPoint) -> PauliValue {
        let Link::Step { r_prev, alpha, tg0, tgp, inv_adil, .. } = *link else {
            unreachable!()
        };
        let y = x.scaled(self.dil);
        let prev = &self.ctx.prev;
        let tp = prev.free_chain(rest, &y);
        let hs = if prev.source().wrapped() {
            r_prev * (chi1(y.x0).powi(2) - 1.0) + tp.w0.re
        } else {
            tp.w0.re
        };
        let u = self.ctx.upsilon_hp(r_prev + hs, alpha, y.x0);
        let mut s = u * (hs - alpha * y.x0) + tg0 * y.x0 + tgp * y.v[2];
        if u != 1.0 {
            s += (u - 1.0) * r_prev;
        }
        let mut g = self.residual.eval(x) - self.residual.eval(&XPoint::ORIGIN);
        g.w0 += Complex64::new(s, 0.0);
        for l in 0..3 {
            g.wvec[l] += tp.wvec[l] * u;
        }
        g * inv_adil
    }

    fn ups_center(&self, y: &XPoint) -> f64 {
        self.ctx.upsilon(&self.vchain, self.alpha_center, y)
    }

    fn fin_center(&self, y: &XPoint) -> f64 {
        self.ctx.finner(&self.vchain, self.alpha_center, y)
    }

    /// Spectral map `J(r) = (αρ)^{-1} E[r]` on the previous scale's variable.
    pub fn j_forward(&self, r: f64) -> f64 {
        self.jmap.eval(r)
    }
}

fn scale_v(v: VForm, f: f64) -> VForm {
    v.map(|c| c * f)
}

fn scale_m(m: MForm, f: f64) -> MForm {
    m.map(|row| row.map(|c| c * f))
}

impl KernelSource for StepLevel {
    fn polarization(&self) -> PolarizationModel {
        self.ctx.prev.source().polarization()
    }

    fn momentum(&self) -> f64 {
        self.ctx.prev.source().momentum()
    }

    fn coupling(&self) -> f64 {
        self.ctx.prev.source().coupling()
    }

    fn contraction_weight(&self, k: f64) -> f64 {
        self.contraction.weight(k)
    }

    fn mu(&self) -> f64 {
        self.mu
    }

    fn wrapped(&self) -> bool {
        true
    }

    fn free(&self, r: f64, x: &XPoint) -> PauliValue {
        let chain = self.freeze_self(r);
        let c = chi1(x.x0);
        let mut t = self.ttilde(&chain[0], &chain[1..], x) * (c * c);
        t.w0 += x.x0;
        t
    }

    fn v01(&self, x: &XPoint, k: &[f64; 3]) -> VForm {
        if self.zero {
            return ZERO_V;
        }
        let y = x.scaled(self.dil);
        let kk = k.map(|c| c * self.dil);
        let f = self.f1 * self.ups_center(&y) * self.ups_center(&y.plus(&kk));
        scale_v(self.ctx.prev.source().v01(&y, &kk), f)
    }

    fn w2(&self, kind: Degree2, x: &XPoint, ka: &[f64; 3], kb: &[f64; 3]) -> MForm {
        if self.zero {
            return ZERO_M;
        }
        let y = x.scaled(self.dil);
        let (ya, yb) = (ka.map(|c| c * self.dil), kb.map(|c| c * self.dil));
        let src = self.ctx.prev.source();
        let mut m = src.w2(kind, &y, &ya, &yb);
        let mut add = |i: usize, j: usize, v: PauliValue| m[i][j] -= v;
        match kind {
            Degree2::D02 => {
                let (xa, xb) = (y.plus(&ya), y.plus(&yb));
                let (fa, fb) = (self.fin_center(&xa), self.fin_center(&xb));
                if fa != 0.0 || fb != 0.0 {
                    let (v1, v2) = (src.v01(&y, &ya), src.v01(&xa, &yb));
                    let (v3, v4) = (src.v01(&y, &yb), src.v01(&xb, &ya));
                    for i in 0..3 {
                        for j in 0..3 {
                            add(i, j, (v1[i] * v2[j] * fa + v3[j] * v4[i] * fb) * 0.5);
                        }
                    }
                }
                let u = self.ups_center(&y) * self.ups_center(&y.plus(&ya).plus(&yb));
                scale_m(m, self.f2 * u)
            }
            Degree2::D11 => {
                let (xa, xb) = (y.plus(&ya), y.plus(&yb));
                let xab = xa.plus(&yb);
                let (f0, fab) = (self.fin_center(&y), self.fin_center(&xab));
                if f0 != 0.0 {
                    let (v1, v2) = (adjoint_v(&src.v01(&y, &ya)), src.v01(&y, &yb));
                    for i in 0..3 {
                        for j in 0..3 {
                            add(i, j, v1[i] * v2[j] * f0);
                        }
                    }
                }
                if fab != 0.0 {
                    let (v1, v2) = (src.v01(&xa, &yb), adjoint_v(&src.v01(&xb, &ya)));
                    for i in 0..3 {
                        for j in 0..3 {
                            add(i, j, v1[j] * v2[i] * fab);
                        }
                    }
                }
                let u = self.ups_center(&xa) * self.ups_center(&xb);
                scale_m(m, self.f2 * u)
            }
        }
    }

    fn ir_scale(&self) -> Option<f64> {
        (self.sigma <= 1.0).then_some(self.sigma)
    }

    fn beta(&self, r: f64) -> f64 {
        self.beta.eval(self.jinv.eval(r))
    }
}
