//! Random Feshbach pairs built on a diagonal `H_f` surrogate.
//!
//! A surrogate is a random unitary `U` and sorted "photon energies"
//! `e_i ∈ [0, 1]` (with `e_0 = 0`); cutoffs and `τ` are functions of the
//! surrogate, so they commute by construction.

use crate::{diag, CMat, FeshbachError, FeshbachPair};
use nalgebra::SymmetricEigen;
use num_complex::Complex64;
use rand::Rng;
use std::f64::consts::FRAC_PI_2;

#[derive(Clone, Debug)]
pub struct Surrogate {
    pub u: CMat,
    pub energies: Vec<f64>,
}

impl Surrogate {
    pub fn random<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Self {
        let mut energies: Vec<f64> = (0..dim).map(|i| if i == 0 { 0.0 } else { rng.random::<f64>() }).collect();
        energies.sort_by(f64::total_cmp);
        Self { u: random_unitary(rng, dim), energies }
    }

    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    /// `U f(e) U*`.
    pub fn function(&self, f: impl Fn(f64) -> f64) -> CMat {
        let d: Vec<f64> = self.energies.iter().map(|&e| f(e)).collect();
        &self.u * diag(&d) * self.u.adjoint()
    }
}

fn smoothstep(t: f64) -> f64 {
    let t = t.clamp(0.0, 1.0);
    t * t * t * (10.0 - 15.0 * t + 6.0 * t * t)
}

/// Cutoff equal to 1 below `a`, 0 above `b`, with `χ² + χ̄² = 1` exactly.
pub fn cutoff_pair(a: f64, b: f64) -> (impl Fn(f64) -> f64, impl Fn(f64) -> f64) {
    let s = move |e: f64| smoothstep((e - a) / (b - a));
    (move |e| (FRAC_PI_2 * s(e)).cos(), move |e| (FRAC_PI_2 * s(e)).sin())
}

fn complex_entry<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CMat {
    let a = CMat::from_fn(dim, dim, |_, _| complex_entry(rng));
    a.qr().q()
}

/// Hermitian matrix with operator norm `scale`.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, dim: usize, scale: f64) -> CMat {
    let a = CMat::from_fn(dim, dim, |_, _| complex_entry(rng));
    let h = (&a + a.adjoint()) * Complex64::new(0.5, 0.0);
    let norm = SymmetricEigen::new(h.clone())
        .eigenvalues
        .iter()
        .fold(0.0f64, |m, l| m.max(l.abs()));
    h * Complex64::new(scale / norm, 0.0)
}

/// Standard random pair: `χ` cuts off between 0.3 and 0.6, `τ = e + 1/4`,
/// `H = τ + ω` with `‖ω‖ = 0.1`.
pub fn random_pair<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Result<(FeshbachPair, Surrogate), FeshbachError> {
    let s = Surrogate::random(rng, dim);
    let (c, cb) = cutoff_pair(0.3, 0.6);
    let tau = s.function(|e| e + 0.25);
    let h = &tau + random_hermitian(rng, dim, 0.1);
    let pair = FeshbachPair::with_chibar(h, tau, s.function(&c), s.function(&cb))?;
    Ok((pair, s))
}

/// Random pair whose `H` has the lowest eigenvector of the standard pair as
/// an exact kernel vector; returns the pair and that vector.
pub fn singular_pair<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
) -> Result<(FeshbachPair, nalgebra::DVector<Complex64>), FeshbachError> {
    let (p, _) = random_pair(rng, dim)?;
    let eig = SymmetricEigen::new(p.h.clone());
    let i = eig.eigenvalues.imin();
    let psi = eig.eigenvectors.column(i).into_owned();
    let mu = eig.eigenvalues[i];
    let h = &p.h - (&psi * psi.adjoint()) * Complex64::new(mu, 0.0);
    Ok((p.with_h(h)?, psi))
}
