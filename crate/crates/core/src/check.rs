//! Check records produced by the verification batteries.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// One verified identity: residual against tolerance, with the equation tag
/// it traces back to.
#[derive(Debug, Clone)]
pub struct Check {
    /// Stable identifier, e.g. "vertex.ybe.n2".
    pub id: String,
    /// Equation tag the check verifies, e.g. "YB" or "CRM-BB".
    pub eq_tag: String,
    /// Worst relative residual observed.
    pub residual: f64,
    /// Tolerance the residual is held against.
    pub tol: f64,
}

impl Check {
    pub fn new(id: impl Into<String>, eq_tag: impl Into<String>, residual: f64, tol: f64) -> Self {
        Check { id: id.into(), eq_tag: eq_tag.into(), residual, tol }
    }

    pub fn pass(&self) -> bool {
        self.residual.is_finite() && self.residual < self.tol
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {} ({}): residual {:.3e} vs tol {:.1e}",
            if self.pass() { "pass" } else { "FAIL" },
            self.id,
            self.eq_tag,
            self.residual,
            self.tol
        )
    }
}

/// Collects checks and tracks the worst offender.
#[derive(Debug, Default, Clone)]
pub struct Battery {
    pub checks: Vec<Check>,
}

impl Battery {
    pub fn new() -> Self {
        Battery { checks: Vec::new() }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn record(
        &mut self,
        id: impl Into<String>,
        eq_tag: impl Into<String>,
        residual: f64,
        tol: f64,
    ) {
        self.push(Check::new(id, eq_tag, residual, tol));
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(Check::pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass())
    }

    pub fn worst(&self) -> Option<&Check> {
        self.checks
            .iter()
            .max_by(|a, b| (a.residual / a.tol).partial_cmp(&(b.residual / b.tol)).unwrap())
    }

    pub fn merge(&mut self, other: Battery) {
        self.checks.extend(other.checks);
    }
}
