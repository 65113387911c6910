use std::fmt;

/// Outcome of one check; `pass ⟺ max_residual ≤ tolerance`.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub check_name: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Worst-case locations, most severe first.
    pub witnesses: Vec<String>,
    /// Seed of any random choices made by the check.
    pub rng_seed: Option<u64>,
}

impl CheckReport {
    pub fn new(name: &str, max_residual: f64, tolerance: f64, witnesses: Vec<String>) -> Self {
        Self {
            check_name: name.to_string(),
            max_residual,
            tolerance,
            pass: max_residual <= tolerance,
            witnesses,
            rng_seed: None,
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: max residual {:.3e} (tolerance {:.1e})",
            if self.pass { "PASS" } else { "FAIL" },
            self.check_name,
            self.max_residual,
            self.tolerance
        )?;
        if let Some(w) = self.witnesses.first() {
            write!(f, " at {w}")?;
        }
        Ok(())
    }
}

/// Running maximum with the location where it was attained.
#[derive(Default)]
pub(crate) struct Worst {
    pub value: f64,
    pub at: Option<String>,
}

impl Worst {
    pub fn push(&mut self, v: f64, at: impl FnOnce() -> String) {
        if v > self.value || (self.at.is_none() && v >= self.value) {
            self.value = v;
            self.at = Some(at());
        }
    }
}
