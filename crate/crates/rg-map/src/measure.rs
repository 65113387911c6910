//! Materialization of a scale on grids and the polydisc measurements.

use crate::level::LevelRef;
use crate::{KernelSequence, PolydiscParams, RgError};
use model_seed::{dot_m, dot_v, Degree2, KernelSource, XPoint};
use pauli_kernels::norm::stencil;
use pauli_kernels::{kernel_norm, Axis, NormFlavor, PhotonAxes, PhotonArg, SpectralPoint, WickKernel, XAxes, ZeroLimit};

/// Grids on which kernels are materialized for measurement.
#[derive(Clone, Debug, PartialEq)]
pub struct NormGrid {
    pub x1: XAxes,
    pub slot1: PhotonAxes,
    pub x2: XAxes,
    pub slot2: PhotonAxes,
    /// Grid for the free-part deviation.
    pub x0: XAxes,
}

impl NormGrid {
    pub fn new(npol: usize) -> Self {
        Self {
            x1: XAxes::sized(9, 9, 5),
            slot1: PhotonAxes::standard(8, 5, npol),
            x2: XAxes::sized(5, 5, 3),
            slot2: PhotonAxes::standard(4, 3, npol),
            x0: XAxes::sized(9, 9, 5),
        }
    }

    /// Same shape with `|k| = 0` included as the first magnitude node.
    pub fn with_zero_momentum(mut self) -> Self {
        for s in [&mut self.slot1, &mut self.slot2] {
            let mut k = vec![0.0];
            k.extend_from_slice(&s.kmag.nodes);
            s.kmag = Axis::new(k);
        }
        self
    }
}

/// Gridded interaction kernels of one scale.
#[derive(Clone, Debug, PartialEq)]
pub struct Materialized {
    pub w01: WickKernel,
    pub w10: WickKernel,
    pub w11: WickKernel,
    pub w02: WickKernel,
    pub w20: WickKernel,
}

impl Materialized {
    pub fn degree1(&self) -> [&WickKernel; 2] {
        [&self.w01, &self.w10]
    }

    pub fn degree2(&self) -> [&WickKernel; 3] {
        [&self.w11, &self.w02, &self.w20]
    }
}

fn pol(src: &dyn KernelSource, a: &PhotonArg) -> [f64; 3] {
    src.polarization().vector(a.ktheta, a.kphi, a.lambda)
}

fn xpoint(p: &SpectralPoint) -> XPoint {
    XPoint::from_reduced(p)
}

/// Degree-1 and degree-2 kernels of `src` on `grid`.
pub fn materialize_source(src: &dyn KernelSource, grid: &NormGrid) -> Result<Materialized, RgError> {
    let mut w01 = WickKernel::from_fn(0, 1, grid.x1.clone(), vec![grid.slot1.clone()], |p, a| {
        dot_v(&pol(src, &a[0]), &src.v01(&xpoint(p), &a[0].momentum()))
    })?;
    let xs = WickKernel::zeros(0, 0, grid.x1.clone(), vec![])?;
    let mut idx = vec![0usize; 3];
    let mut args = Vec::new();
    let mut zl = Vec::with_capacity(xs.len());
    for flat in 0..xs.len() {
        pauli_kernels::grid::unravel(flat, &xs.dims(), &mut idx);
        let p = xs.node_args(&idx, &mut args);
        zl.push(src.v01(&xpoint(&p), &[0.0; 3]));
    }
    w01.zero_limit.push(ZeroLimit { slot: 0, values: zl });
    let w10 = w01.adjoint_partner();
    let slots = vec![grid.slot2.clone(), grid.slot2.clone()];
    let w11 = WickKernel::from_fn(1, 1, grid.x2.clone(), slots.clone(), |p, a| {
        let m = src.w2(Degree2::D11, &xpoint(p), &a[0].momentum(), &a[1].momentum());
        dot_m(&pol(src, &a[0]), &m, &pol(src, &a[1]))
    })?;
    let w02 = WickKernel::from_fn(0, 2, grid.x2.clone(), slots, |p, a| {
        let m = src.w2(Degree2::D02, &xpoint(p), &a[0].momentum(), &a[1].momentum());
        dot_m(&pol(src, &a[0]), &m, &pol(src, &a[1]))
    })?;
    let w20 = w02.adjoint_partner();
    Ok(Materialized { w01, w10, w11, w02, w20 })
}

pub fn materialize(seq: &KernelSequence, grid: &NormGrid) -> Result<Materialized, RgError> {
    materialize_source(seq.source(), grid)
}

/// `sup |D| + Σ sup |∂_a D|` over grid nodes in the cone with `X0 ≤ 3/4`,
/// where `D = T̃[r] − (−|p|X_∥ + λX⃗²)` is the deviation of the free part
/// from the reference theory.
pub fn free_deviation(seq: &KernelSequence, r: f64, x: &XAxes) -> Result<f64, RgError> {
    let p = seq.source().momentum();
    let lambda = seq.lambda;
    let chain = seq.level.freeze(r);
    // Stencils must not reach into X0 > 3/4, where the overlap factor acts.
    let mut x = x.clone();
    x.x0 = Axis::new(x.x0.nodes.iter().copied().filter(|&v| v <= 0.75 + 1e-12).collect());
    let x = &x;
    let d = WickKernel::from_fn(0, 0, x.clone(), vec![], |pt, _| {
        let xp = xpoint(pt);
        let t = match (&seq.level, &chain[0]) {
            (LevelRef::Step(s), link) => s.ttilde(link, &chain[1..], &xp),
            (LevelRef::Base(src), _) => {
                let mut t = src.free(r, &xp);
                t.w0 -= xp.x0;
                t
            }
        };
        let reference = -p * pt.xpar + lambda * (pt.xpar * pt.xpar + pt.xperp2);
        let mut v = t;
        v.w0 -= reference;
        v
    })?;
    let dims = d.dims();
    let mut idx = vec![0usize; 3];
    let mut sup = [0.0f64; 4];
    let names = ["X0", "Xpar", "Xperp"];
    for flat in 0..d.len() {
        pauli_kernels::grid::unravel(flat, &dims, &mut idx);
        let (x0, xpar, xperp) = (x.x0.nodes[idx[0]], x.xpar.nodes[idx[1]], x.xperp.nodes[idx[2]]);
        if (xpar * xpar + xperp * xperp).sqrt() > x0 + 1e-12 {
            continue;
        }
        sup[0] = sup[0].max(d.values[flat].frobenius());
        for a in 0..3 {
            let st = stencil(&x.axis(a).nodes, idx[a], 1, names[a])?;
            let mut acc = pauli_kernels::PauliValue::ZERO;
            for (j, w) in st {
                let mut u = idx.clone();
                u[a] = j;
                acc += d.values[pauli_kernels::grid::ravel(&u, &dims)] * w;
            }
            sup[a + 1] = sup[a + 1].max(acc.frobenius());
        }
    }
    Ok(sup.iter().sum())
}

/// `(ε, δ, η, λ, σ, ρ, ξ)` at spectral parameter `r`.
pub fn measure_polydisc(seq: &KernelSequence, r: f64, grid: &NormGrid) -> Result<PolydiscParams, RgError> {
    let xi = seq.params.xi;
    let m = materialize(seq, grid)?;
    let n1: f64 = m.degree1().iter().map(|k| kernel_norm(k, NormFlavor::Plain)).sum::<Result<f64, _>>()?;
    let n2: f64 = m.degree2().iter().map(|k| kernel_norm(k, NormFlavor::Plain)).sum::<Result<f64, _>>()?;
    Ok(PolydiscParams {
        eps: n2 / (xi * xi),
        delta: free_deviation(seq, r, &grid.x0)?,
        eta: n1 / xi,
        lambda: seq.lambda,
        sigma: seq.sigma,
        rho: seq.params.rho,
        xi,
    })
}
