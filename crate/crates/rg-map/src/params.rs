use crate::quad::QuadSpec;
use crate::RgError;

/// Settings of the renormalization map.
#[derive(Clone, Debug, PartialEq)]
pub struct RgParams {
    pub rho: f64,
    pub xi: f64,
    pub lambda0: f64,
    pub mn_max: usize,
    pub l_max: usize,
    /// Chebyshev nodes on the spectral-parameter domain of each step.
    pub r_nodes: usize,
    /// Half-width of the spectral interval `I` of every scale.
    pub r_half: f64,
    pub alpha_tol: f64,
    pub alpha_damping: f64,
    /// Largest admissible `|α − 1|`.
    pub alpha_window: f64,
    /// Finite-difference step in `X` for Taylor data.
    pub fd_step: f64,
    /// Required ratio of estimated series tail to kept sum.
    pub tail_tol: f64,
    /// Floor for resolvent denominators.
    pub floor: f64,
    pub quad: QuadSpec,
    /// Nodes of the degree-0 residual grid along `X0`, `X∥`, `X⊥`.
    pub bulk: [usize; 3],
}

impl Default for RgParams {
    fn default() -> Self {
        Self {
            rho: 0.01,
            xi: 0.1,
            lambda0: 0.5,
            mn_max: 2,
            l_max: 3,
            r_nodes: 9,
            r_half: 0.01,
            alpha_tol: 1e-12,
            alpha_damping: 1.0,
            alpha_window: 0.5,
            fd_step: 1e-4,
            tail_tol: 1e-3,
            floor: 1e-12,
            quad: QuadSpec::default(),
            bulk: [9, 5, 3],
        }
    }
}

impl RgParams {
    pub fn validate(&self) -> Result<(), RgError> {
        if !(self.rho > 0.0 && self.rho <= 0.25) {
            return Err(RgError::Unsupported(format!("rho must lie in (0, 1/4], got {}", self.rho)));
        }
        if !(self.xi > 0.0 && self.xi < 1.0) {
            return Err(RgError::Unsupported(format!("xi must lie in (0, 1), got {}", self.xi)));
        }
        if !(0.0..=0.5).contains(&self.lambda0) {
            return Err(RgError::Unsupported(format!("lambda0 must lie in [0, 1/2], got {}", self.lambda0)));
        }
        if !(1..=2).contains(&self.mn_max) || !(2..=3).contains(&self.l_max) {
            return Err(RgError::Unsupported(format!(
                "truncation MN_max = {}, L_max = {} (supported: MN_max <= 2, 2 <= L_max <= 3)",
                self.mn_max, self.l_max
            )));
        }
        if self.r_nodes < 3 || self.bulk.iter().any(|&n| n < 2) {
            return Err(RgError::Unsupported("r-grid needs >= 3 nodes, residual grid >= 2 per axis".into()));
        }
        if !(self.alpha_damping > 0.0 && self.alpha_damping <= 1.0) {
            return Err(RgError::Unsupported(format!("damping {} outside (0, 1]", self.alpha_damping)));
        }
        Ok(())
    }
}

/// Where a sequence sits in the polydisc.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PolydiscParams {
    /// `ξ`-weighted norm of the degree-2 kernels.
    pub eps: f64,
    /// Deviation of the free part from `−|p|X_∥ + λX⃗²`.
    pub delta: f64,
    /// `ξ`-weighted norm of the degree-1 kernels.
    pub eta: f64,
    pub lambda: f64,
    pub sigma: f64,
    pub rho: f64,
    pub xi: f64,
}
