//! Measured contraction of the polydisc parameters along a trace, compared
//! with the one-step bounds
//! `ε̂ ≤ ε/4 + η/4`, `δ̂ ≤ δ + η/2`, `λ̂ = ρλ` and
//! `η̂ = 10 C_Θ² √α ξ⁻¹ (1 + |p| + δ̂) + η/2` (σ ≤ 1) or `η̂ = η/2` (σ > 1).

use flow_driver::RGTrace;

#[derive(Clone, Debug, PartialEq)]
pub struct ContractionRow {
    /// Scale the step starts from.
    pub n: usize,
    pub sigma_n: f64,
    /// `ε_{n+1} / (ε_n/4 + η_n/4)`; at most 1 when the bound holds.
    pub eps_ratio: f64,
    /// `δ_{n+1} − δ_n − η_n/2`; at most 0 when the bound holds.
    pub delta_excess: f64,
    pub eta_ratio: f64,
    /// Right-hand side of the `η̂` law with the measured `C_Θ`.
    pub eta_predicted: f64,
    /// `η_{n+1} / eta_predicted`.
    pub eta_residual: f64,
    pub lambda_ratio: f64,
    /// `|λ_{n+1}/λ_n − ρ|`.
    pub lambda_defect: f64,
}

fn ratio(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        if a == 0.0 { 0.0 } else { f64::INFINITY }
    } else {
        a / b
    }
}

/// One row per step `n → n+1` of the trace.
pub fn measure_contraction(trace: &RGTrace) -> Vec<ContractionRow> {
    let rho = trace.rg.rho;
    let (sqrt_a, p, xi) = (trace.model.alpha.sqrt(), trace.model.p_mag.abs(), trace.rg.xi);
    trace
        .records
        .windows(2)
        .map(|w| {
            let (a, b) = (&w[0], &w[1]);
            let eta_predicted = if a.sigma_n <= 1.0 {
                10.0 * b.c_theta * b.c_theta * sqrt_a / xi * (1.0 + p + b.delta_meas) + 0.5 * a.eta_meas
            } else {
                0.5 * a.eta_meas
            };
            let lambda_ratio = b.lambda_n / a.lambda_n;
            ContractionRow {
                n: a.n,
                sigma_n: a.sigma_n,
                eps_ratio: ratio(b.eps_meas, 0.25 * (a.eps_meas + a.eta_meas)),
                delta_excess: b.delta_meas - a.delta_meas - 0.5 * a.eta_meas,
                eta_ratio: ratio(b.eta_meas, a.eta_meas),
                eta_predicted,
                eta_residual: ratio(b.eta_meas, eta_predicted),
                lambda_ratio,
                lambda_defect: (lambda_ratio - rho).abs(),
            }
        })
        .collect()
}
