//! Weighted sup-norms of Wick kernels.
//!
//! `plain` is `(2√π)^{M+N}` times the grid sup of the Frobenius norm over
//! nodes in the physical cone `|X⃗| ≤ X0`.  `flat` adds the sups of the
//! `X`-derivatives of order ≤ 2, of `∂_{|p|}∂^a_X` for `|a| ≤ 1` and of
//! `∂^a_{|p|}∂_{|k|}`; `sharp` adds `∂_r`.  Derivatives use three-point
//! stencils (one-sided at the edges); `|p|` and `r` derivatives come from
//! companion grids and count as zero when no companion is supplied.

use crate::grid::unravel;
use crate::{slot_weight, KernelError, PauliValue, WickKernel};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormFlavor {
    Plain,
    Flat,
    Sharp,
}

/// Kernels sampled at shifted `|p|` or `r` on the same grid, with the shift.
#[derive(Clone, Copy, Debug, Default)]
pub struct Companions<'a> {
    pub dp: Option<(&'a WickKernel, f64)>,
    pub dr: Option<(&'a WickKernel, f64)>,
}

/// Three-point Lagrange weights for the `order`-th derivative at node `i`.
pub fn stencil(nodes: &[f64], i: usize, order: usize, axis: &'static str) -> Result<Vec<(usize, f64)>, KernelError> {
    let n = nodes.len();
    if n == 1 {
        return Ok(Vec::new());
    }
    if n < 3 {
        return Err(KernelError::StencilTooCoarse { axis, nodes: n, order });
    }
    let s = i.clamp(1, n - 2) - 1;
    let pts = [s, s + 1, s + 2];
    let x = nodes[i];
    let mut out = Vec::with_capacity(3);
    for (a, &pa) in pts.iter().enumerate() {
        let others: Vec<f64> = pts.iter().enumerate().filter(|(b, _)| *b != a).map(|(_, &p)| nodes[p]).collect();
        let xa = nodes[pa];
        let den = (xa - others[0]) * (xa - others[1]);
        let w = match order {
            1 => (2.0 * x - others[0] - others[1]) / den,
            2 => 2.0 / den,
            _ => unreachable!("stencil order must be 1 or 2"),
        };
        out.push((pa, w));
    }
    Ok(out)
}

fn axis_nodes(k: &WickKernel, a: usize) -> (&[f64], &'static str) {
    if a < 3 {
        (&k.x.axis(a).nodes, ["X0", "Xpar", "Xperp"][a])
    } else {
        let s = (a - 3) / 4;
        (&k.slots[s].axis((a - 3) % 4).nodes, ["|k|", "theta", "phi"][(a - 3) % 4])
    }
}

/// Derivative multi-index as a list of `(axis, order)` pairs.
type Deriv = Vec<(usize, usize)>;

fn derivative_at(
    k: &WickKernel,
    values: &[PauliValue],
    dims: &[usize],
    idx: &[usize],
    d: &Deriv,
) -> Result<PauliValue, KernelError> {
    let mut terms: Vec<(Vec<usize>, f64)> = vec![(idx.to_vec(), 1.0)];
    for &(a, order) in d {
        let (nodes, name) = axis_nodes(k, a);
        let st = stencil(nodes, idx[a], order, name)?;
        if st.is_empty() {
            return Ok(PauliValue::ZERO);
        }
        let mut next = Vec::with_capacity(terms.len() * 3);
        for (t, w) in &terms {
            for &(p, sw) in &st {
                let mut u = t.clone();
                u[a] = p;
                next.push((u, w * sw));
            }
        }
        terms = next;
    }
    Ok(terms
        .iter()
        .map(|(u, w)| values[crate::grid::ravel(u, dims)] * *w)
        .sum())
}

fn sup_over_cone(k: &WickKernel, values: &[PauliValue], d: &Deriv) -> Result<f64, KernelError> {
    let dims = k.dims();
    let mut idx = vec![0usize; dims.len()];
    let mut sup = 0.0f64;
    for flat in 0..values.len() {
        unravel(flat, &dims, &mut idx);
        let (x0, xpar, xperp) = (k.x.x0.nodes[idx[0]], k.x.xpar.nodes[idx[1]], k.x.xperp.nodes[idx[2]]);
        if (xpar * xpar + xperp * xperp).sqrt() > x0 + 1e-12 {
            continue;
        }
        let v = if d.is_empty() {
            values[flat]
        } else {
            derivative_at(k, values, &dims, &idx, d)?
        };
        sup = sup.max(v.frobenius());
    }
    Ok(sup)
}

fn x_multi_indices(max_order: usize) -> Vec<Deriv> {
    let mut out = vec![Vec::new()];
    for a in 0..3 {
        out.push(vec![(a, 1)]);
    }
    if max_order >= 2 {
        for a in 0..3 {
            out.push(vec![(a, 2)]);
            for b in a + 1..3 {
                out.push(vec![(a, 1), (b, 1)]);
            }
        }
    }
    out
}

fn difference(k: &WickKernel, other: &WickKernel, h: f64) -> Result<Vec<PauliValue>, KernelError> {
    if other.dims() != k.dims() {
        return Err(KernelError::Shape("companion grid differs".into()));
    }
    Ok(k.values
        .iter()
        .zip(&other.values)
        .map(|(a, b)| (*b - *a) * (1.0 / h))
        .collect())
}

pub fn kernel_norm(k: &WickKernel, flavor: NormFlavor) -> Result<f64, KernelError> {
    kernel_norm_with(k, flavor, &Companions::default())
}

pub fn kernel_norm_with(k: &WickKernel, flavor: NormFlavor, comp: &Companions) -> Result<f64, KernelError> {
    let weight = slot_weight().powi((k.m + k.n) as i32);
    if flavor == NormFlavor::Plain {
        return Ok(weight * sup_over_cone(k, &k.values, &Vec::new())?);
    }
    let mut total = 0.0;
    for d in x_multi_indices(2) {
        total += sup_over_cone(k, &k.values, &d)?;
    }
    let dp = comp.dp.map(|(o, h)| difference(k, o, h)).transpose()?;
    if let Some(dpv) = &dp {
        for d in x_multi_indices(1) {
            total += sup_over_cone(k, dpv, &d)?;
        }
    }
    let mut kd = 0.0f64;
    let mut kd_p = 0.0f64;
    for s in 0..k.slots.len() {
        let d = vec![(3 + 4 * s, 1)];
        kd = kd.max(sup_over_cone(k, &k.values, &d)?);
        if let Some(dpv) = &dp {
            kd_p = kd_p.max(sup_over_cone(k, dpv, &d)?);
        }
    }
    total += kd + kd_p;
    if flavor == NormFlavor::Sharp {
        if let Some(drv) = comp.dr.map(|(o, h)| difference(k, o, h)).transpose()? {
            total += sup_over_cone(k, &drv, &Vec::new())?;
        }
    }
    Ok(weight * total)
}

/// `Σ_k ξ^{-k} Σ_{M+N=k} ‖w_{M,N}‖`.
pub fn sequence_norm_xi(ws: &[&WickKernel], xi: f64, flavor: NormFlavor) -> Result<f64, KernelError> {
    if !(xi > 0.0 && xi < 1.0) {
        return Err(KernelError::XiOutOfRange(xi));
    }
    let mut total = 0.0;
    for w in ws {
        total += xi.powi(-((w.m + w.n) as i32)) * kernel_norm(w, flavor)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stencil_is_exact_on_quadratics() {
        let nodes = [0.0, 0.1, 0.35, 0.6, 1.0];
        let f = |x: f64| 3.0 * x * x - 2.0 * x + 0.5;
        for i in 0..nodes.len() {
            let d1: f64 = stencil(&nodes, i, 1, "x").unwrap().iter().map(|&(p, w)| w * f(nodes[p])).sum();
            let d2: f64 = stencil(&nodes, i, 2, "x").unwrap().iter().map(|&(p, w)| w * f(nodes[p])).sum();
            assert!((d1 - (6.0 * nodes[i] - 2.0)).abs() < 1e-12);
            assert!((d2 - 6.0).abs() < 1e-10);
        }
    }

    #[test]
    fn two_node_axis_is_too_coarse() {
        assert!(matches!(
            stencil(&[0.0, 1.0], 0, 1, "x"),
            Err(KernelError::StencilTooCoarse { .. })
        ));
    }
}
