//! Backward chain `e_(n,m) = J_(n)^{-1} ∘ … ∘ J_(m)^{-1}[0]`, where
//! `J_(k)` maps the spectral parameter of scale `k` to scale `k + 1`.

use crate::{FlowError, RGTrace};
use rg_map::{spectral_map, Direction};

#[derive(Clone, Debug, PartialEq)]
pub struct EChain {
    pub n: usize,
    pub m_max: usize,
    /// `e_(n,m)` for `m = n..=m_max`.
    pub values: Vec<f64>,
    /// `|e_(n,m) − e_(n,m−1)|` for `m = n+1..=m_max`.
    pub increments: Vec<f64>,
}

impl EChain {
    pub fn value(&self) -> f64 {
        *self.values.last().unwrap()
    }

    pub fn increment(&self) -> f64 {
        self.increments.last().copied().unwrap_or(0.0)
    }
}

fn inverse(trace: &RGTrace, k: usize, t: f64) -> Result<f64, FlowError> {
    Ok(spectral_map(&trace.states[k + 1].seq, t, Direction::Inverse)?)
}

/// `e_(n,m)` for all `m ≤ m_max`; requires scale `m_max + 1` in the trace.
pub fn solve_e_infinity(trace: &RGTrace, n: usize, m_max: usize) -> Result<EChain, FlowError> {
    if m_max < n || m_max + 1 >= trace.states.len() {
        return Err(FlowError::Trace(format!(
            "need n <= m_max < last scale, got n = {n}, m_max = {m_max}, last = {}",
            trace.states.len() - 1
        )));
    }
    let mut values = Vec::with_capacity(m_max - n + 1);
    for m in n..=m_max {
        let mut e = 0.0;
        for k in (n..=m).rev() {
            e = inverse(trace, k, e)?;
        }
        values.push(e);
    }
    let increments = values.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    Ok(EChain {
        n,
        m_max,
        values,
        increments,
    })
}
