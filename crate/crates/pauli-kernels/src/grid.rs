//! Tensor-grid storage of Wick kernels, multilinear evaluation and
//! symmetrization over the creation / annihilation slot groups.

use crate::{KernelError, PauliValue, PhotonArg, Polarization, SpectralPoint};

/// A sorted list of grid nodes along one continuous axis.
#[derive(Clone, Debug, PartialEq)]
pub struct Axis {
    pub nodes: Vec<f64>,
}

impl Axis {
    pub fn new(nodes: Vec<f64>) -> Self {
        debug_assert!(nodes.windows(2).all(|w| w[0] < w[1]), "axis nodes must increase");
        Self { nodes }
    }

    pub fn single(x: f64) -> Self {
        Self { nodes: vec![x] }
    }

    pub fn uniform(a: f64, b: f64, n: usize) -> Self {
        if n == 1 {
            return Self::single(a);
        }
        Self::new((0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect())
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn lo(&self) -> f64 {
        self.nodes[0]
    }

    pub fn hi(&self) -> f64 {
        self.nodes[self.nodes.len() - 1]
    }

    /// Cell index and fractional position of `x`; `t == 0` on nodes.
    pub fn locate(&self, x: f64, name: &'static str) -> Result<(usize, f64), KernelError> {
        let (lo, hi) = (self.lo(), self.hi());
        let tol = 1e-12 * (1.0 + lo.abs().max(hi.abs()));
        if !(x >= lo - tol && x <= hi + tol) {
            return Err(KernelError::OutOfHull {
                axis: name,
                value: x,
                lo,
                hi,
            });
        }
        let n = self.nodes.len();
        if n == 1 {
            return Ok((0, 0.0));
        }
        let x = x.clamp(lo, hi);
        let i = match self.nodes.binary_search_by(|v| v.partial_cmp(&x).unwrap()) {
            Ok(i) => return Ok((i.min(n - 2), if i == n - 1 { 1.0 } else { 0.0 })),
            Err(i) => i.clamp(1, n - 1) - 1,
        };
        let t = (x - self.nodes[i]) / (self.nodes[i + 1] - self.nodes[i]);
        Ok((i, t))
    }
}

/// Axes of the reduced spectral variables `(X0, Xpar, |X⊥|)`.
#[derive(Clone, Debug, PartialEq)]
pub struct XAxes {
    pub x0: Axis,
    pub xpar: Axis,
    pub xperp: Axis,
}

impl XAxes {
    pub fn origin() -> Self {
        Self {
            x0: Axis::single(0.0),
            xpar: Axis::single(0.0),
            xperp: Axis::single(0.0),
        }
    }

    /// `n` nodes per axis on `[0,1] × [-1,1] × [0,1]`.
    pub fn unit(n: usize) -> Self {
        Self::sized(n, n, n)
    }

    pub fn sized(n0: usize, npar: usize, nperp: usize) -> Self {
        Self {
            x0: Axis::uniform(0.0, 1.0, n0),
            xpar: Axis::uniform(-1.0, 1.0, npar),
            xperp: Axis::uniform(0.0, 1.0, nperp),
        }
    }

    pub fn dims(&self) -> [usize; 3] {
        [self.x0.len(), self.xpar.len(), self.xperp.len()]
    }

    pub fn axis(&self, i: usize) -> &Axis {
        match i {
            0 => &self.x0,
            1 => &self.xpar,
            _ => &self.xperp,
        }
    }
}

/// Axes of one photon slot.
#[derive(Clone, Debug, PartialEq)]
pub struct PhotonAxes {
    pub kmag: Axis,
    pub ktheta: Axis,
    pub kphi: Axis,
    pub npol: usize,
}

impl PhotonAxes {
    /// `nk` magnitudes on `(0, 1]` (left-open), `nth` angles on `[0, π]`,
    /// a single azimuth `φ = 0`.
    pub fn standard(nk: usize, nth: usize, npol: usize) -> Self {
        Self {
            kmag: Axis::new((1..=nk).map(|i| i as f64 / nk as f64).collect()),
            ktheta: Axis::uniform(0.0, std::f64::consts::PI, nth),
            kphi: Axis::single(0.0),
            npol,
        }
    }

    pub fn dims(&self) -> [usize; 4] {
        [self.kmag.len(), self.ktheta.len(), self.kphi.len(), self.npol]
    }

    pub fn axis(&self, i: usize) -> &Axis {
        match i {
            0 => &self.kmag,
            1 => &self.ktheta,
            _ => &self.kphi,
        }
    }
}

/// Polarization-stripped `|k| → 0` limit of one photon slot: per node of the
/// remaining grid the vector `V⃗` with `lim w = ε⃗(n⃗, λ)·V⃗`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroLimit {
    pub slot: usize,
    pub values: Vec<[PauliValue; 3]>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WickKernel {
    pub m: usize,
    pub n: usize,
    pub x: XAxes,
    pub slots: Vec<PhotonAxes>,
    pub values: Vec<PauliValue>,
    pub zero_limit: Vec<ZeroLimit>,
    /// Declared purely scalar (vector parts identically zero).
    pub scalar: bool,
}

const X_NAMES: [&str; 3] = ["X0", "Xpar", "Xperp"];
const K_NAMES: [&str; 3] = ["|k|", "theta", "phi"];

impl WickKernel {
    pub fn dims_of(x: &XAxes, slots: &[PhotonAxes]) -> Vec<usize> {
        let mut d = x.dims().to_vec();
        for s in slots {
            d.extend_from_slice(&s.dims());
        }
        d
    }

    pub fn dims(&self) -> Vec<usize> {
        Self::dims_of(&self.x, &self.slots)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn zeros(m: usize, n: usize, x: XAxes, slots: Vec<PhotonAxes>) -> Result<Self, KernelError> {
        if slots.len() != m + n {
            return Err(KernelError::Shape(format!(
                "degree ({m},{n}) needs {} photon slots, got {}",
                m + n,
                slots.len()
            )));
        }
        let size = Self::dims_of(&x, &slots).iter().product();
        Ok(Self {
            m,
            n,
            x,
            slots,
            values: vec![PauliValue::ZERO; size],
            zero_limit: Vec::new(),
            scalar: false,
        })
    }

    /// Samples `f(X, K)` on every grid node.
    pub fn from_fn<F>(m: usize, n: usize, x: XAxes, slots: Vec<PhotonAxes>, mut f: F) -> Result<Self, KernelError>
    where
        F: FnMut(&SpectralPoint, &[PhotonArg]) -> PauliValue,
    {
        let mut k = Self::zeros(m, n, x, slots)?;
        let dims = k.dims();
        let mut idx = vec![0usize; dims.len()];
        let mut args = Vec::with_capacity(m + n);
        for flat in 0..k.values.len() {
            unravel(flat, &dims, &mut idx);
            let p = k.node_args(&idx, &mut args);
            k.values[flat] = f(&p, &args);
        }
        Ok(k)
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        ravel(idx, &self.dims())
    }

    pub fn get(&self, idx: &[usize]) -> PauliValue {
        self.values[self.flat_index(idx)]
    }

    /// Spectral point and photon arguments of a grid node.
    pub fn node_args(&self, idx: &[usize], args: &mut Vec<PhotonArg>) -> SpectralPoint {
        let p = SpectralPoint::from_reduced(
            self.x.x0.nodes[idx[0]],
            self.x.xpar.nodes[idx[1]],
            self.x.xperp.nodes[idx[2]],
        );
        args.clear();
        for (s, ax) in self.slots.iter().enumerate() {
            let b = 3 + 4 * s;
            args.push(PhotonArg::new(
                ax.kmag.nodes[idx[b]],
                ax.ktheta.nodes[idx[b + 1]],
                ax.kphi.nodes[idx[b + 2]],
                Polarization::from_index(idx[b + 3]),
            ));
        }
        p
    }

    /// Degree `(N, M)` partner `w_{N,M}(X; K', K) = w_{M,N}(X; K, K')*`.
    pub fn adjoint_partner(&self) -> Self {
        let dims = self.dims();
        let mut slots = self.slots[self.m..].to_vec();
        slots.extend_from_slice(&self.slots[..self.m]);
        let mut out = Self::zeros(self.n, self.m, self.x.clone(), slots).expect("consistent slots");
        out.scalar = self.scalar;
        let out_dims = out.dims();
        let mut idx = vec![0usize; dims.len()];
        let mut jdx = vec![0usize; dims.len()];
        for flat in 0..self.values.len() {
            unravel(flat, &dims, &mut idx);
            jdx[..3].copy_from_slice(&idx[..3]);
            let (cre, ann) = idx[3..].split_at(4 * self.m);
            jdx[3..3 + ann.len()].copy_from_slice(ann);
            jdx[3 + ann.len()..].copy_from_slice(cre);
            out.values[ravel(&jdx, &out_dims)] = self.values[flat].adjoint();
        }
        out
    }

    /// Largest Frobenius distance between this kernel and the adjoint of `other`.
    pub fn pairing_defect(&self, other: &Self) -> Result<f64, KernelError> {
        let adj = other.adjoint_partner();
        if adj.dims() != self.dims() {
            return Err(KernelError::Shape("partner grids differ".into()));
        }
        Ok(self
            .values
            .iter()
            .zip(&adj.values)
            .map(|(a, b)| (*a - *b).frobenius())
            .fold(0.0, f64::max))
    }

    pub fn max_vector_part(&self) -> f64 {
        self.values.iter().map(|v| v.vector_norm()).fold(0.0, f64::max)
    }

    /// Applies `f` to every sample.
    pub fn map(&self, mut f: impl FnMut(PauliValue) -> PauliValue) -> Self {
        let mut out = self.clone();
        out.values.iter_mut().for_each(|v| *v = f(*v));
        out.zero_limit.clear();
        out
    }

    /// Sample-wise linear combination `a·self + b·other` on identical grids.
    pub fn combine(&self, a: f64, other: &Self, b: f64) -> Result<Self, KernelError> {
        if self.dims() != other.dims() || self.x != other.x || self.slots != other.slots {
            return Err(KernelError::Shape("combine needs identical grids".into()));
        }
        let mut out = self.clone();
        out.zero_limit.clear();
        for (v, o) in out.values.iter_mut().zip(&other.values) {
            *v = *v * a + *o * b;
        }
        Ok(out)
    }

    /// Index into the zero-limit grid of `slot` for a full grid index.
    pub fn zero_limit_index(&self, slot: usize, idx: &[usize]) -> usize {
        let dims = self.dims();
        let b = 3 + 4 * slot;
        let mut rd = Vec::with_capacity(dims.len() - 4);
        let mut ri = Vec::with_capacity(dims.len() - 4);
        for (a, (&d, &i)) in dims.iter().zip(idx).enumerate() {
            if a < b || a >= b + 4 {
                rd.push(d);
                ri.push(i);
            }
        }
        ravel(&ri, &rd)
    }

    pub fn zero_limit_for(&self, slot: usize) -> Option<&ZeroLimit> {
        self.zero_limit.iter().find(|z| z.slot == slot)
    }
}

pub fn ravel(idx: &[usize], dims: &[usize]) -> usize {
    idx.iter().zip(dims).fold(0, |acc, (&i, &d)| acc * d + i)
}

pub fn unravel(mut flat: usize, dims: &[usize], idx: &mut [usize]) {
    for a in (0..dims.len()).rev() {
        idx[a] = flat % dims[a];
        flat /= dims[a];
    }
}

/// Multilinear interpolation of the grid samples at `(x, args)`.
pub fn eval_kernel(k: &WickKernel, x: &SpectralPoint, args: &[PhotonArg]) -> Result<PauliValue, KernelError> {
    if args.len() != k.slots.len() {
        return Err(KernelError::Shape(format!(
            "kernel has {} photon slots, got {} arguments",
            k.slots.len(),
            args.len()
        )));
    }
    let dims = k.dims();
    let mut cells: Vec<(usize, usize, f64)> = Vec::with_capacity(dims.len());
    let coords = [x.x0, x.xpar, x.xperp()];
    for a in 0..3 {
        let (i, t) = k.x.axis(a).locate(coords[a], X_NAMES[a])?;
        cells.push((a, i, t));
    }
    let mut base = vec![0usize; dims.len()];
    for (s, (ax, arg)) in k.slots.iter().zip(args).enumerate() {
        let b = 3 + 4 * s;
        let c = [arg.kmag, arg.ktheta, arg.kphi];
        for a in 0..3 {
            let (i, t) = ax.axis(a).locate(c[a], K_NAMES[a])?;
            cells.push((b + a, i, t));
        }
        let li = arg.lambda.index();
        if li >= ax.npol {
            return Err(KernelError::Shape(format!("polarization index {li} >= {}", ax.npol)));
        }
        base[b + 3] = li;
    }
    for &(a, i, _) in &cells {
        base[a] = i;
    }
    let active: Vec<(usize, f64)> = cells.iter().filter(|c| c.2 != 0.0).map(|c| (c.0, c.2)).collect();
    let mut acc = PauliValue::ZERO;
    let mut idx = base.clone();
    for mask in 0u32..(1u32 << active.len()) {
        let mut w = 1.0;
        for (b, &(a, t)) in active.iter().enumerate() {
            if mask & (1 << b) != 0 {
                idx[a] = base[a] + 1;
                w *= t;
            } else {
                idx[a] = base[a];
                w *= 1.0 - t;
            }
        }
        if w != 0.0 {
            acc += k.values[ravel(&idx, &dims)] * w;
        }
    }
    Ok(acc)
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, first);
            out.push(p);
        }
    }
    out
}

/// Average over all permutations of the creation slots and, separately, of
/// the annihilation slots.  Exactly idempotent.
pub fn symmetrize(k: &WickKernel) -> Result<WickKernel, KernelError> {
    if k.slots.len() != k.m + k.n || k.values.len() != k.dims().iter().product::<usize>() {
        return Err(KernelError::Shape("grid does not match degree".into()));
    }
    for group in [0..k.m, k.m..k.m + k.n] {
        let g: Vec<_> = group.collect();
        if g.iter().any(|&s| k.slots[s] != k.slots[g[0]]) {
            return Err(KernelError::Shape("slots of one group must share axes".into()));
        }
    }
    if k.m <= 1 && k.n <= 1 {
        return Ok(k.clone());
    }
    let perms_c = permutations(&(0..k.m).collect::<Vec<_>>());
    let perms_a = permutations(&(k.m..k.m + k.n).collect::<Vec<_>>());
    let dims = k.dims();
    let mut out = k.clone();
    let mut idx = vec![0usize; dims.len()];
    let mut jdx = vec![0usize; dims.len()];
    let mut images = Vec::with_capacity(perms_c.len() * perms_a.len());
    for flat in 0..k.values.len() {
        unravel(flat, &dims, &mut idx);
        images.clear();
        for pc in &perms_c {
            for pa in &perms_a {
                jdx[..3].copy_from_slice(&idx[..3]);
                for (dst, &src) in pc.iter().chain(pa.iter()).enumerate() {
                    let (d, s) = (3 + 4 * dst, 3 + 4 * src);
                    jdx[d..d + 4].copy_from_slice(&idx[s..s + 4]);
                }
                images.push(ravel(&jdx, &dims));
            }
        }
        images.sort_unstable();
        let first = k.values[images[0]];
        if images.iter().all(|&j| k.values[j] == first) {
            continue;
        }
        let sum: PauliValue = images.iter().map(|&j| k.values[j]).sum();
        out.values[flat] = sum * (1.0 / images.len() as f64);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn locate_handles_nodes_and_edges() {
        let a = Axis::uniform(0.0, 1.0, 5);
        assert_eq!(a.locate(0.0, "x").unwrap(), (0, 0.0));
        assert_eq!(a.locate(1.0, "x").unwrap(), (3, 1.0));
        let (i, t) = a.locate(0.3, "x").unwrap();
        assert_eq!(i, 1);
        assert!((t - 0.2).abs() < 1e-12);
        assert!(a.locate(1.1, "x").is_err());
    }

    #[test]
    fn single_node_axis_requires_exact_coordinate() {
        let a = Axis::single(0.0);
        assert!(a.locate(0.0, "x").is_ok());
        assert!(a.locate(0.1, "x").is_err());
    }
}
