//! Residual reports produced by the sampled axiom and invariant checks.

use std::fmt;

/// Worst residual of one checked property, with the inputs that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub max_residual: f64,
    pub witness: Vec<Vec<f64>>,
    pub pass: bool,
}

/// Per-property maximum residuals over a sampled run.
#[derive(Debug, Clone, PartialEq)]
pub struct AxiomReport {
    pub tol: f64,
    pub checks: Vec<Check>,
}

impl AxiomReport {
    pub fn new(tol: f64) -> Self {
        Self { tol, checks: Vec::new() }
    }

    /// Record a residual for `name`; keeps the maximum and its witness.
    pub fn record(&mut self, name: &str, residual: f64, witness: &[&[f64]]) {
        let residual = if residual.is_nan() { f64::INFINITY } else { residual.max(0.0) };
        let idx = match self.checks.iter().position(|c| c.name == name) {
            Some(i) => i,
            None => {
                self.checks.push(Check {
                    name: name.to_string(),
                    max_residual: 0.0,
                    witness: Vec::new(),
                    pass: true,
                });
                self.checks.len() - 1
            }
        };
        let tol = self.tol;
        let check = &mut self.checks[idx];
        if residual > check.max_residual || check.witness.is_empty() {
            check.max_residual = residual;
            check.witness = witness.iter().map(|w| w.to_vec()).collect();
        }
        check.pass = check.max_residual <= tol;
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn residual(&self, name: &str) -> f64 {
        self.get(name).map_or(0.0, |c| c.max_residual)
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn worst(&self) -> Option<&Check> {
        self.checks
            .iter()
            .max_by(|a, b| a.max_residual.total_cmp(&b.max_residual))
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{:<28} {:>12.3e} {}",
                c.name,
                c.max_residual,
                if c.pass { "ok" } else { "FAIL" }
            )?;
        }
        Ok(())
    }
}
