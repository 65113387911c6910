//! TOML run configuration.  Sections mirror the modules they configure;
//! every key is optional and falls back to the documented default.

use crate::CliError;
use feshbach_core::MAX_DIM;
use flow_driver::FlowConfig;
use model_seed::{ModelConfig, ModelKind};
use rg_map::{QuadSpec, RgParams};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

/// Environment variable that overrides `[cli-io] output_dir`.
pub const OUTPUT_DIR_ENV: &str = "ISORG_OUTPUT_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelName {
    Qed,
    Nelson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelSection {
    pub model: ModelName,
    pub p_mag: f64,
    /// `α_fs` for QED, `g` for the Nelson model.
    pub alpha: f64,
    pub sigma0: f64,
    /// Infrared exponent of the cutoff `κ_σ`.
    pub kexp: u32,
}

impl Default for ModelSection {
    fn default() -> Self {
        Self {
            model: ModelName::Qed,
            p_mag: 0.1,
            alpha: 1e-4,
            sigma0: 1e-6,
            kexp: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RgSection {
    pub rho: f64,
    pub xi: f64,
    pub lambda0: f64,
    pub mn_max: usize,
    pub l_max: usize,
    /// Chebyshev nodes per spectral interval.
    pub r_nodes: usize,
    pub r_half: f64,
    /// Residual grid sizes in `(X0, X_∥, X⊥)`.
    pub bulk: [usize; 3],
    pub alpha_tol: f64,
    pub alpha_damping: f64,
    pub alpha_window: f64,
    pub fd_step: f64,
    pub tail_tol: f64,
    pub radial_order: usize,
    pub n_u: usize,
    pub n_phi: usize,
    pub pair_radial_order: usize,
    pub pair_n_u: usize,
    pub pair_n_phi: usize,
}

impl Default for RgSection {
    fn default() -> Self {
        let p = RgParams::default();
        let q = p.quad;
        Self {
            rho: p.rho,
            xi: p.xi,
            lambda0: p.lambda0,
            mn_max: p.mn_max,
            l_max: p.l_max,
            r_nodes: p.r_nodes,
            r_half: p.r_half,
            bulk: p.bulk,
            alpha_tol: p.alpha_tol,
            alpha_damping: p.alpha_damping,
            alpha_window: p.alpha_window,
            fd_step: p.fd_step,
            tail_tol: p.tail_tol,
            radial_order: q.radial_order,
            n_u: q.n_u,
            n_phi: q.n_phi,
            pair_radial_order: q.pair_radial_order,
            pair_n_u: q.pair_n_u,
            pair_n_phi: q.pair_n_phi,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FlowSection {
    pub n_scales: usize,
    pub measure: bool,
    pub max_radius: f64,
    /// Last scale used for the mass; `N(σ₀) + 8` when absent.
    pub n_last: Option<usize>,
    /// `σ₀` values of the `sigma-study` subcommand.
    pub sigmas: Vec<f64>,
    /// Momenta of the `sigma-study` subcommand (`p = 0` is always added).
    pub ps: Vec<f64>,
}

impl Default for FlowSection {
    fn default() -> Self {
        Self {
            n_scales: 12,
            measure: true,
            max_radius: 10.0,
            n_last: None,
            sigmas: vec![1e-4, 1e-6],
            ps: vec![0.1],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerifySection {
    /// Seed of every random choice (directions, random matrices).
    pub seed: u64,
    pub n_dirs: usize,
    pub sum_rule_tol: f64,
    pub symmetry_tol: f64,
    pub injected: f64,
    pub oracle_modes: usize,
    pub oracle_coupling: f64,
    pub oracle_tol: f64,
    pub feshbach_dim_min: usize,
    pub feshbach_dim_max: usize,
    pub feshbach_trials: usize,
    pub feshbach_tol: f64,
}

impl Default for VerifySection {
    fn default() -> Self {
        Self {
            seed: 1,
            n_dirs: 8,
            sum_rule_tol: 1e-4,
            symmetry_tol: 1e-6,
            injected: 1e-3,
            oracle_modes: 6,
            oracle_coupling: 1e-3,
            oracle_tol: 1e-3,
            feshbach_dim_min: 8,
            feshbach_dim_max: 32,
            feshbach_trials: 100,
            feshbach_tol: 1e-9,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSection {
    pub output_dir: PathBuf,
    /// Stem of the trace files (`<stem>.csv`, `<stem>.json`).
    pub trace_name: String,
    /// Command-line override; takes precedence over the environment.
    #[serde(skip)]
    pub forced_dir: Option<PathBuf>,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self {
            output_dir: PathBuf::from("out"),
            trace_name: "trace".into(),
            forced_dir: None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    #[serde(rename = "model-seed")]
    pub model: ModelSection,
    #[serde(rename = "rg-map")]
    pub rg: RgSection,
    #[serde(rename = "flow-driver")]
    pub flow: FlowSection,
    pub verify: VerifySection,
    #[serde(rename = "cli-io")]
    pub output: OutputSection,
}

fn constraint(key: &str, message: impl Into<String>) -> CliError {
    CliError::Constraint { key: key.into(), message: message.into() }
}

fn positive(key: &str, v: f64) -> Result<(), CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(constraint(key, format!("must be positive and finite, got {v}")))
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn model_config(&self) -> ModelConfig {
        let m = &self.model;
        ModelConfig {
            p_mag: m.p_mag,
            alpha: m.alpha,
            sigma0: m.sigma0,
            kexp: m.kexp,
            model: match m.model {
                ModelName::Qed => ModelKind::Qed,
                ModelName::Nelson => ModelKind::Nelson,
            },
        }
    }

    pub fn rg_params(&self) -> RgParams {
        let r = &self.rg;
        RgParams {
            rho: r.rho,
            xi: r.xi,
            lambda0: r.lambda0,
            mn_max: r.mn_max,
            l_max: r.l_max,
            r_nodes: r.r_nodes,
            r_half: r.r_half,
            alpha_tol: r.alpha_tol,
            alpha_damping: r.alpha_damping,
            alpha_window: r.alpha_window,
            fd_step: r.fd_step,
            tail_tol: r.tail_tol,
            bulk: r.bulk,
            quad: QuadSpec {
                radial_order: r.radial_order,
                n_u: r.n_u,
                n_phi: r.n_phi,
                pair_radial_order: r.pair_radial_order,
                pair_n_u: r.pair_n_u,
                pair_n_phi: r.pair_n_phi,
            },
            ..RgParams::default()
        }
    }

    pub fn flow_config(&self) -> FlowConfig {
        FlowConfig {
            model: self.model_config(),
            rg: self.rg_params(),
            n_scales: self.flow.n_scales,
            measure: self.flow.measure,
            max_radius: self.flow.max_radius,
        }
    }

    /// Output directory: command line, then the environment, then the
    /// config file.
    pub fn output_dir(&self) -> PathBuf {
        if let Some(d) = &self.output.forced_dir {
            return d.clone();
        }
        match std::env::var_os(OUTPUT_DIR_ENV) {
            Some(d) if !d.is_empty() => PathBuf::from(d),
            _ => self.output.output_dir.clone(),
        }
    }

    /// Checks every field against the constraints of its home module.
    pub fn validate(&self) -> Result<(), CliError> {
        let m = &self.model;
        if !(m.p_mag.abs() < 1.0 / 3.0) {
            return Err(constraint("model-seed.p_mag", format!("requires |p| < 1/3, got {}", m.p_mag)));
        }
        if !(m.p_mag >= 0.0) {
            return Err(constraint("model-seed.p_mag", format!("is the magnitude |p| and must be >= 0, got {}", m.p_mag)));
        }
        if !(m.sigma0 > 0.0 && m.sigma0 < 1.0) {
            return Err(constraint("model-seed.sigma0", format!("must lie in (0, 1), got {}", m.sigma0)));
        }
        let r = &self.rg;
        if !(r.xi > 0.0 && r.xi < 1.0) {
            return Err(constraint("rg-map.xi", format!("must lie in (0, 1), got {}", r.xi)));
        }
        if !(r.rho > 0.0 && r.rho <= 0.25) {
            return Err(constraint("rg-map.rho", format!("must lie in (0, 1/4], got {}", r.rho)));
        }
        if !(0.0..=0.5).contains(&r.lambda0) {
            return Err(constraint("rg-map.lambda0", format!("must lie in [0, 1/2], got {}", r.lambda0)));
        }
        self.model_config()
            .validate()
            .map_err(|e| constraint("model-seed", e.to_string()))?;
        self.rg_params().validate().map_err(|e| constraint("rg-map", e.to_string()))?;
        for (k, v) in [
            ("rg-map.r_half", r.r_half),
            ("rg-map.alpha_tol", r.alpha_tol),
            ("rg-map.alpha_window", r.alpha_window),
            ("rg-map.fd_step", r.fd_step),
            ("rg-map.tail_tol", r.tail_tol),
            ("flow-driver.max_radius", self.flow.max_radius),
            ("verify.sum_rule_tol", self.verify.sum_rule_tol),
            ("verify.symmetry_tol", self.verify.symmetry_tol),
            ("verify.injected", self.verify.injected),
            ("verify.oracle_tol", self.verify.oracle_tol),
            ("verify.feshbach_tol", self.verify.feshbach_tol),
        ] {
            positive(k, v)?;
        }
        let q = [r.radial_order, r.n_u, r.n_phi, r.pair_radial_order, r.pair_n_u, r.pair_n_phi];
        if q.contains(&0) {
            return Err(constraint("rg-map", "quadrature orders must be >= 1"));
        }
        for &s in &self.flow.sigmas {
            if !(s > 0.0 && s < 1.0) {
                return Err(constraint("flow-driver.sigmas", format!("sigma0 must lie in (0, 1), got {s}")));
            }
        }
        for &p in &self.flow.ps {
            if !(p.abs() < 1.0 / 3.0) {
                return Err(constraint("flow-driver.ps", format!("|p| must be < 1/3, got {p}")));
            }
        }
        let v = &self.verify;
        if v.n_dirs == 0 {
            return Err(constraint("verify.n_dirs", "need at least one direction"));
        }
        if v.oracle_modes < 3 {
            return Err(constraint("verify.oracle_modes", "need at least 3 modes (one per panel)"));
        }
        if !(v.oracle_coupling >= 0.0 && v.oracle_coupling.is_finite()) {
            return Err(constraint("verify.oracle_coupling", "must be finite and >= 0"));
        }
        if v.feshbach_dim_min < 2 || v.feshbach_dim_min > v.feshbach_dim_max {
            return Err(constraint("verify.feshbach_dim_min", "need 2 <= feshbach_dim_min <= feshbach_dim_max"));
        }
        if v.feshbach_dim_max > MAX_DIM {
            return Err(constraint("verify.feshbach_dim_max", format!("dense limit is {}", MAX_DIM)));
        }
        if self.output.trace_name.is_empty() {
            return Err(constraint("cli-io.trace_name", "must be nonempty"));
        }
        Ok(())
    }
}

/// Reads and validates a configuration file.
pub fn load_config(path: &Path) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.to_path_buf(), source: e })?;
    RunConfig::parse(&text).map_err(|e| match e {
        CliError::Parse(m) => CliError::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}
