use std::fmt;

use crate::exactlin::{vector, Rational, Vector};

/// A single failed identity instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Which identity failed.
    pub check: String,
    /// The (1-based) basis indices at which it failed.
    pub indices: Vec<usize>,
    /// The nonzero residual, flattened when the identity is between operators.
    pub residual: Vector,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices.iter().map(ToString::to_string).collect();
        write!(
            f,
            "{} at ({}): residual {}",
            self.check,
            idx.join(","),
            vector::format_combination(&self.residual, "e")
        )
    }
}

/// Result of an exhaustive identity check. `ok()` holds iff no violation was
/// recorded; every recorded residual is nonzero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<String>,
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn begin(&mut self, check: &str) {
        if !self.checks.iter().any(|c| c == check) {
            self.checks.push(check.to_string());
        }
    }

    /// Records a violation when `residual` is nonzero.
    pub(crate) fn expect_zero(&mut self, check: &str, indices: &[usize], residual: &[Rational]) {
        if !vector::is_zero(residual) {
            self.violations.push(Violation {
                check: check.to_string(),
                indices: indices.to_vec(),
                residual: residual.to_vec(),
            });
        }
    }

    /// Records a violation without a meaningful residual vector.
    pub(crate) fn fail(&mut self, check: &str, indices: &[usize], witness: Vector) {
        self.violations.push(Violation {
            check: check.to_string(),
            indices: indices.to_vec(),
            residual: witness,
        });
    }

    pub fn passed(&self, check: &str) -> bool {
        self.checks.iter().any(|c| c == check) && !self.violations.iter().any(|v| v.check == check)
    }

    pub fn failures<'a>(&'a self, check: &'a str) -> impl Iterator<Item = &'a Violation> + 'a {
        self.violations.iter().filter(move |v| v.check == check)
    }

    pub fn merge(&mut self, other: VerificationReport) {
        for c in other.checks {
            self.begin(&c);
        }
        self.violations.extend(other.violations);
    }
}
