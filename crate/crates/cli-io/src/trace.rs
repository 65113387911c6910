//! Trace files: a CSV table with one row per scale and a JSON sidecar with
//! the run metadata.
//!
//! Columns, in order: `n, sigma_n, lambda_n, alpha_n_at_0, E_at_0, beta_n,
//! eps_meas, delta_meas, eta_meas, tail_budget`.  Floats are written in
//! shortest round-trip scientific notation (`{:e}`), so reloading
//! reproduces every value bit for bit.

use crate::{CliError, RunConfig};
use flow_driver::ScaleRecord;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

pub const COLUMNS: [&str; 10] = [
    "n",
    "sigma_n",
    "lambda_n",
    "alpha_n_at_0",
    "E_at_0",
    "beta_n",
    "eps_meas",
    "delta_meas",
    "eta_meas",
    "tail_budget",
];

/// One CSV row.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceRow {
    pub n: usize,
    pub sigma_n: f64,
    pub lambda_n: f64,
    pub alpha_n_at_0: f64,
    pub e_at_0: f64,
    pub beta_n: f64,
    pub eps_meas: f64,
    pub delta_meas: f64,
    pub eta_meas: f64,
    pub tail_budget: f64,
}

impl From<&ScaleRecord> for TraceRow {
    fn from(r: &ScaleRecord) -> Self {
        Self {
            n: r.n,
            sigma_n: r.sigma_n,
            lambda_n: r.lambda_n,
            alpha_n_at_0: r.alpha_n_at_0,
            e_at_0: r.e_at_0,
            beta_n: r.beta_n,
            eps_meas: r.eps_meas,
            delta_meas: r.delta_meas,
            eta_meas: r.eta_meas,
            tail_budget: r.tail_budget,
        }
    }
}

impl TraceRow {
    fn floats(&self) -> [f64; 9] {
        [
            self.sigma_n,
            self.lambda_n,
            self.alpha_n_at_0,
            self.e_at_0,
            self.beta_n,
            self.eps_meas,
            self.delta_meas,
            self.eta_meas,
            self.tail_budget,
        ]
    }

    fn from_fields(n: usize, f: [f64; 9]) -> Self {
        Self {
            n,
            sigma_n: f[0],
            lambda_n: f[1],
            alpha_n_at_0: f[2],
            e_at_0: f[3],
            beta_n: f[4],
            eps_meas: f[5],
            delta_meas: f[6],
            eta_meas: f[7],
            tail_budget: f[8],
        }
    }
}

/// Per-scale data that does not fit the fixed columns.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScaleExtra {
    pub n: usize,
    pub center: f64,
    pub c_theta: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceMeta {
    pub version: String,
    pub columns: Vec<String>,
    pub config: RunConfig,
    pub crossing_scale: usize,
    pub scales: Vec<ScaleExtra>,
}

impl TraceMeta {
    pub fn new(config: &RunConfig, records: &[ScaleRecord]) -> Self {
        Self {
            version: env!("CARGO_PKG_VERSION").into(),
            columns: COLUMNS.iter().map(|s| s.to_string()).collect(),
            config: config.clone(),
            crossing_scale: flow_driver::crossing_scale(config.model.sigma0, config.rg.rho),
            scales: records
                .iter()
                .map(|r| ScaleExtra { n: r.n, center: r.center, c_theta: r.c_theta })
                .collect(),
        }
    }
}

fn io(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |e| CliError::Io { path: path.to_path_buf(), source: e }
}

fn csv_err(path: &Path) -> impl FnOnce(csv::Error) -> CliError + '_ {
    move |e| CliError::Format(format!("{}: {e}", path.display()))
}

/// Writes `<stem>.csv` and `<stem>.json` into `dir`; returns both paths.
pub fn write_trace(records: &[ScaleRecord], meta: &TraceMeta, dir: &Path, stem: &str) -> Result<(PathBuf, PathBuf), CliError> {
    std::fs::create_dir_all(dir).map_err(io(dir))?;
    let csv_path = dir.join(format!("{stem}.csv"));
    write_rows(&records.iter().map(TraceRow::from).collect::<Vec<_>>(), &csv_path)?;
    let json_path = dir.join(format!("{stem}.json"));
    let text = serde_json::to_string_pretty(meta).map_err(|e| CliError::Format(e.to_string()))?;
    std::fs::write(&json_path, text + "\n").map_err(io(&json_path))?;
    Ok((csv_path, json_path))
}

pub fn write_rows(rows: &[TraceRow], path: &Path) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path).map_err(csv_err(path))?;
    w.write_record(COLUMNS).map_err(csv_err(path))?;
    for r in rows {
        let mut rec = vec![r.n.to_string()];
        rec.extend(r.floats().iter().map(|x| format!("{x:e}")));
        w.write_record(&rec).map_err(csv_err(path))?;
    }
    w.flush().map_err(io(path))
}

pub fn read_trace(path: &Path) -> Result<Vec<TraceRow>, CliError> {
    let mut r = csv::Reader::from_path(path).map_err(csv_err(path))?;
    let header = r.headers().map_err(csv_err(path))?.clone();
    if header.iter().ne(COLUMNS) {
        return Err(CliError::Format(format!("{}: unexpected header {header:?}", path.display())));
    }
    let mut rows = Vec::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec.map_err(csv_err(path))?;
        let bad = |col: &str| CliError::Format(format!("{}: row {}: bad {col}", path.display(), line + 2));
        let n = rec[0].parse().map_err(|_| bad("n"))?;
        let mut f = [0.0; 9];
        for (i, x) in f.iter_mut().enumerate() {
            *x = rec[i + 1].parse().map_err(|_| bad(COLUMNS[i + 1]))?;
        }
        rows.push(TraceRow::from_fields(n, f));
    }
    Ok(rows)
}

pub fn read_meta(path: &Path) -> Result<TraceMeta, CliError> {
    let text = std::fs::read_to_string(path).map_err(io(path))?;
    serde_json::from_str(&text).map_err(|e| CliError::Format(format!("{}: {e}", path.display())))
}
