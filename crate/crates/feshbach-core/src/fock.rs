//! Truncated bosonic Fock space with spin, for dense oracles.
//!
//! Modes are discrete photon states (a momentum per mode, one oscillator per
//! mode); the basis holds every occupation with at most `max_photons`
//! photons and total photon energy `Σ|k|` at most `energy_cap`.  Operators
//! are assembled from kernel closures evaluated at the photon energy and
//! momentum of the state they act on, matching `a*^M w(H_f, P_f) a^N`.

use crate::CMat;
use pauli_kernels::PauliValue;
use std::collections::HashMap;

#[derive(Clone, Debug)]
pub struct FockBasis {
    pub modes: Vec<[f64; 3]>,
    /// Each state is a sorted multiset of occupied modes.
    pub states: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

fn kmag(k: &[f64; 3]) -> f64 {
    (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt()
}

impl FockBasis {
    pub fn new(modes: Vec<[f64; 3]>, max_photons: usize, energy_cap: f64) -> Self {
        let mut states = vec![Vec::new()];
        let mut frontier = vec![(Vec::<usize>::new(), 0.0f64)];
        for _ in 0..max_photons {
            let mut next = Vec::new();
            for (s, e) in &frontier {
                let start = s.last().copied().unwrap_or(0);
                for (j, k) in modes.iter().enumerate().skip(start) {
                    let e2 = e + kmag(k);
                    if e2 <= energy_cap * (1.0 + 1e-12) {
                        let mut t = s.clone();
                        t.push(j);
                        next.push((t, e2));
                    }
                }
            }
            states.extend(next.iter().map(|(s, _)| s.clone()));
            frontier = next;
        }
        let index = states.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        Self { modes, states, index }
    }

    /// Number of Fock states (the operator dimension is twice this).
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn dim(&self) -> usize {
        2 * self.states.len()
    }

    pub fn vacuum(&self) -> usize {
        0
    }

    pub fn hf(&self, s: usize) -> f64 {
        self.states[s].iter().map(|&j| kmag(&self.modes[j])).sum()
    }

    pub fn pf(&self, s: usize) -> [f64; 3] {
        let mut p = [0.0; 3];
        for &j in &self.states[s] {
            for (a, pa) in p.iter_mut().enumerate() {
                *pa += self.modes[j][a];
            }
        }
        p
    }

    fn lookup(&self, s: &[usize]) -> Option<usize> {
        self.index.get(s).copied()
    }

    fn add_block(m: &mut CMat, row: usize, col: usize, v: &PauliValue, c: f64) {
        let b = v.to_matrix();
        for i in 0..2 {
            for j in 0..2 {
                m[(2 * row + i, 2 * col + j)] += b[i][j] * c;
            }
        }
    }

    /// Block-diagonal operator `f(H_f, P⃗_f)`.
    pub fn diagonal(&self, f: impl Fn(f64, [f64; 3]) -> PauliValue) -> CMat {
        let mut m = CMat::zeros(self.dim(), self.dim());
        for s in 0..self.len() {
            Self::add_block(&mut m, s, s, &f(self.hf(s), self.pf(s)), 1.0);
        }
        m
    }

    /// Remove one photon from mode `j`: target multiset and `√n_j`.
    fn annihilate(s: &[usize], j: usize) -> Option<(Vec<usize>, f64)> {
        let n = s.iter().filter(|&&i| i == j).count();
        if n == 0 {
            return None;
        }
        let pos = s.iter().position(|&i| i == j).unwrap();
        let mut t = s.to_vec();
        t.remove(pos);
        Some((t, (n as f64).sqrt()))
    }

    fn create(s: &[usize], j: usize) -> (Vec<usize>, f64) {
        let n = s.iter().filter(|&&i| i == j).count();
        let mut t = s.to_vec();
        let pos = t.partition_point(|&i| i <= j);
        t.insert(pos, j);
        (t, ((n + 1) as f64).sqrt())
    }

    /// `Σ a*_{i₁}…a*_{i_M} w(H_f, P⃗_f; i, j) a_{j₁}…a_{j_N}` summed over all
    /// ordered mode tuples, projected onto the basis.  `w` receives the
    /// photon energy and momentum of the state between the creators and
    /// annihilators.
    pub fn wick(
        &self,
        m: usize,
        n: usize,
        w: impl Fn(f64, [f64; 3], &[usize], &[usize]) -> PauliValue,
    ) -> CMat {
        let nm = self.modes.len();
        let mut out = CMat::zeros(self.dim(), self.dim());
        for col in 0..self.len() {
            // Annihilate N photons in every order.
            let mut stage: Vec<(Vec<usize>, Vec<usize>, f64)> = vec![(self.states[col].clone(), Vec::new(), 1.0)];
            for _ in 0..n {
                let mut next = Vec::new();
                for (s, js, c) in &stage {
                    for j in 0..nm {
                        if let Some((t, f)) = Self::annihilate(s, j) {
                            let mut js2 = js.clone();
                            js2.push(j);
                            next.push((t, js2, c * f));
                        }
                    }
                }
                stage = next;
            }
            for (mid, js, c) in stage {
                let Some(mid_idx) = self.lookup(&mid) else { continue };
                let (hf, pf) = (self.hf(mid_idx), self.pf(mid_idx));
                let mut created: Vec<(Vec<usize>, Vec<usize>, f64)> = vec![(mid, Vec::new(), c)];
                for _ in 0..m {
                    let mut next = Vec::new();
                    for (s, is, c) in &created {
                        for i in 0..nm {
                            let (t, f) = Self::create(s, i);
                            let mut is2 = is.clone();
                            is2.insert(0, i);
                            next.push((t, is2, c * f));
                        }
                    }
                    created = next;
                }
                for (target, is, c) in created {
                    if let Some(row) = self.lookup(&target) {
                        let v = w(hf, pf, &is, &js);
                        Self::add_block(&mut out, row, col, &v, c);
                    }
                }
            }
        }
        out
    }

    /// Vacuum expectation `⟨Ω⊗e_s, A Ω⊗e_t⟩` as a 2×2 Pauli value.
    pub fn vacuum_block(&self, a: &CMat) -> PauliValue {
        let v = 2 * self.vacuum();
        pauli_kernels::pauli_decompose([
            [a[(v, v)], a[(v, v + 1)]],
            [a[(v + 1, v)], a[(v + 1, v + 1)]],
        ])
    }
}

/// Spectral norm of a dense operator.
pub fn operator_norm(a: &CMat) -> f64 {
    a.clone().svd(false, false).singular_values.max()
}

