//! Subcommand implementations.  Each returns the human-readable summary
//! and whether every executed check passed; structured results are written
//! to the output directory.

use crate::trace::{write_trace, TraceMeta};
use crate::{CliError, RunConfig};
use flow_driver::{renormalized_mass, run_flow, sigma_limit_study, MassReport};
use model_seed::{nelson_seed_kernels, seed_kernels, ModelKind, SeedSequence};
use rg_map::{first_decimation, rg_step, KernelSequence, NormGrid};
use serde_json::{json, Value};
use std::path::Path;
use verify::{
    check_reflection, check_scalar_symmetry, check_sum_rules, feshbach_suite, measure_contraction, oracle_series,
    CheckReport, InjectedTau3, OracleConfig,
};

#[derive(Debug, Default)]
pub struct Outcome {
    pub lines: Vec<String>,
    pub pass: bool,
}

impl Outcome {
    fn new() -> Self {
        Self { lines: Vec::new(), pass: true }
    }

    fn say(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn check(&mut self, r: &CheckReport) {
        self.pass &= r.pass;
        self.say(r.to_string());
    }
}

pub fn report_json(r: &CheckReport) -> Value {
    json!({
        "check_name": r.check_name,
        "max_residual": r.max_residual,
        "tolerance": r.tolerance,
        "pass": r.pass,
        "witnesses": r.witnesses,
        "rng_seed": r.rng_seed,
    })
}

fn write_json(dir: &Path, name: &str, v: &Value) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Io { path: dir.to_path_buf(), source: e })?;
    let path = dir.join(name);
    let text = serde_json::to_string_pretty(v).map_err(|e| CliError::Format(e.to_string()))?;
    std::fs::write(&path, text + "\n").map_err(|e| CliError::Io { path, source: e })
}

fn seed_of(cfg: &RunConfig, p: f64) -> Result<SeedSequence, CliError> {
    let mc = cfg.model_config();
    let s = match mc.model {
        ModelKind::Qed => seed_kernels(&mc)?,
        ModelKind::Nelson => nelson_seed_kernels(&mc)?,
    };
    Ok(s.with_signed_momentum(p))
}

fn sequence(cfg: &RunConfig, p: f64) -> Result<KernelSequence, CliError> {
    Ok(KernelSequence::from_seed(seed_of(cfg, p)?, cfg.rg_params())?)
}

/// First decimation followed by one renormalization step.
fn one_step(s: &KernelSequence) -> Result<KernelSequence, CliError> {
    Ok(rg_step(&first_decimation(s)?)?)
}

pub fn flow(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let mut out = Outcome::new();
    let trace = run_flow(&cfg.flow_config())?;
    let dir = cfg.output_dir();
    let (csv, json) = write_trace(&trace.records, &TraceMeta::new(cfg, &trace.records), &dir, &cfg.output.trace_name)?;
    out.say(format!("{:>3} {:>12} {:>12} {:>14} {:>12} {:>10} {:>10}", "n", "sigma", "alpha(0)", "beta", "eps", "delta", "eta"));
    for r in &trace.records {
        out.say(format!(
            "{:>3} {:>12.4e} {:>12.8} {:>14.10} {:>12.4e} {:>10.4e} {:>10.4e}",
            r.n, r.sigma_n, r.alpha_n_at_0, r.beta_n, r.eps_meas, r.delta_meas, r.eta_meas
        ));
    }
    if cfg.flow.measure && trace.records.len() > 1 {
        out.say("contraction (eps ratio <= 1, eta vs law, lambda ratio - rho):");
        for c in measure_contraction(&trace) {
            out.say(format!(
                "  {:>3} eps {:>9.3e} eta/law {:>9.3e} lambda {:.1e}",
                c.n, c.eps_ratio, c.eta_residual, c.lambda_defect
            ));
        }
    }
    out.say(format!("trace written to {} and {}", csv.display(), json.display()));
    Ok(out)
}

fn mass_json(m: &MassReport) -> Value {
    json!({
        "m_ren": m.m_ren, "n_last": m.n_last, "beta": m.beta, "h": m.h, "dbeta": m.dbeta,
        "d2beta": m.d2beta, "n_increment": m.n_increment, "h_estimate": m.h_estimate,
    })
}

pub fn mass(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let mut out = Outcome::new();
    let m = renormalized_mass(&cfg.flow_config(), cfg.flow.n_last)?;
    out.say(format!("m_ren = {:.12}", m.m_ren));
    out.say(format!("  n_last = {}, h = {:e}", m.n_last, m.h));
    out.say(format!("  |m(n_last) - m(n_last - 1)| = {:.3e}", m.n_increment));
    out.say(format!("  |central - forward difference| = {:.3e}", m.h_estimate));
    write_json(&cfg.output_dir(), "mass.json", &mass_json(&m))?;
    Ok(out)
}

pub fn sigma_study(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let mut out = Outcome::new();
    let st = sigma_limit_study(&cfg.flow_config(), &cfg.flow.sigmas, &cfg.flow.ps)?;
    out.say(format!("{:>10} {:>8} {:>16} {:>12} {:>12}", "sigma", "p", "m_ren", "envelope", "increment"));
    let mut rows = Vec::new();
    for r in &st.rows {
        out.say(format!(
            "{:>10.2e} {:>8.4} {:>16.12} {:>12.4e} {:>12}",
            r.sigma,
            r.p,
            r.mass.m_ren,
            r.envelope_ratio,
            r.sigma_increment.map_or("-".into(), |x| format!("{x:.4e}"))
        ));
        rows.push(json!({
            "sigma": r.sigma, "p": r.p, "mass": mass_json(&r.mass), "dm_p0": r.dm_p0,
            "envelope_ratio": r.envelope_ratio, "third_ratio": r.third_ratio, "sigma_increment": r.sigma_increment,
        }));
    }
    write_json(&cfg.output_dir(), "sigma_study.json", &Value::Array(rows))?;
    Ok(out)
}

pub fn check_feshbach(cfg: &RunConfig, dim: Option<usize>, trials: Option<usize>) -> Result<Outcome, CliError> {
    let v = &cfg.verify;
    let dims = match dim {
        Some(d) => d..=d,
        None => v.feshbach_dim_min..=v.feshbach_dim_max,
    };
    let trials = trials.unwrap_or(v.feshbach_trials);
    let s = feshbach_suite(dims, trials, v.seed, v.feshbach_tol)?;
    let mut out = Outcome::new();
    out.say(format!("{trials} random pairs, seed {}", v.seed));
    for r in s.reports() {
        out.check(r);
    }
    out.say(format!("observed derivative order {:.3}", s.min_order));
    write_json(&cfg.output_dir(), "check_feshbach.json", &Value::Array(s.reports().map(report_json).to_vec()))?;
    Ok(out)
}

pub fn check_sumrules(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let v = &cfg.verify;
    let s = sequence(cfg, cfg.model.p_mag)?;
    let before = check_sum_rules(&s, v.n_dirs, v.seed, f64::INFINITY);
    let after = check_sum_rules(&one_step(&s)?, v.n_dirs, v.seed, before.report.max_residual + v.sum_rule_tol);
    let mut out = Outcome::new();
    out.say(format!("seed: degree 0-1 {:.3e}, degree 1-2 {:.3e}", before.level01, before.level12));
    out.say(format!("after one step: degree 0-1 {:.3e}, degree 1-2 {:.3e}", after.level01, after.level12));
    out.check(&after.report);
    write_json(&cfg.output_dir(), "check_sumrules.json", &json!([report_json(&before.report), report_json(&after.report)]))?;
    Ok(out)
}

pub fn check_symmetry(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let v = &cfg.verify;
    let axes = NormGrid::new(cfg.model_config().model.polarization().count()).x0;
    let p = cfg.model.p_mag;
    let s = sequence(cfg, p)?;
    let stepped = one_step(&s)?;
    let mut out = Outcome::new();
    let scalar = check_scalar_symmetry(&stepped, &axes, v.symmetry_tol);
    out.check(&scalar);
    let mirror = one_step(&sequence(cfg, -p)?)?;
    let refl = check_reflection(&mirror, &stepped, &axes, 0.1, v.symmetry_tol);
    out.check(&refl);
    let bad = InjectedTau3::wrap(&s, v.injected).ok_or_else(|| CliError::Format("seed is not a base level".into()))?;
    let control = check_scalar_symmetry(&bad, &axes, v.symmetry_tol);
    let detected = !control.pass && (control.max_residual - v.injected).abs() <= 1e-12;
    out.say(format!(
        "{} negative control: injected {:.3e}, measured {:.3e}",
        if detected { "PASS" } else { "FAIL" },
        v.injected,
        control.max_residual
    ));
    out.pass &= detected;
    write_json(
        &cfg.output_dir(),
        "check_symmetry.json",
        &json!([report_json(&scalar), report_json(&refl), report_json(&control)]),
    )?;
    Ok(out)
}

pub fn oracle_compare(cfg: &RunConfig, extra_modes: usize) -> Result<Outcome, CliError> {
    let v = &cfg.verify;
    let oc = OracleConfig {
        coupling: v.oracle_coupling,
        n_modes: v.oracle_modes,
        params: cfg.rg_params(),
        tolerance: v.oracle_tol,
        ..OracleConfig::default()
    };
    let series = oracle_series(&oc, v.oracle_modes..=v.oracle_modes + extra_modes)?;
    let mut out = Outcome::new();
    for r in &series {
        out.say(format!(
            "{:>3} modes (dim {:>3}): kernel {:.12e} dense {:.12e} relative {:.3e}",
            r.n_modes,
            r.dim,
            r.kernel,
            r.dense,
            r.relative_error
        ));
    }
    out.check(&series[0].report);
    write_json(&cfg.output_dir(), "oracle_compare.json", &Value::Array(series.iter().map(|r| report_json(&r.report)).collect()))?;
    Ok(out)
}
