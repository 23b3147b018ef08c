//! Pass/fail reports produced by the axiom checkers.

use std::fmt;

/// How a check covered its search space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckMode {
    /// Every case was inspected (the count is of elementary checks).
    Exhaustive { checks: u64 },
    /// Randomized coverage with a recorded seed.
    Sampled { seed: u64, samples: u64 },
}

/// One named check with an optional counterexample.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub witness: Option<String>,
    pub mode: CheckMode,
}

impl CheckReport {
    pub fn pass(name: &str, checks: u64) -> Self {
        CheckReport {
            name: name.into(),
            passed: true,
            witness: None,
            mode: CheckMode::Exhaustive { checks },
        }
    }

    pub fn fail(name: &str, witness: String, checks: u64) -> Self {
        CheckReport {
            name: name.into(),
            passed: false,
            witness: Some(witness),
            mode: CheckMode::Exhaustive { checks },
        }
    }
}

/// A collection of checks for one object.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub subject: String,
    pub checks: Vec<CheckReport>,
}

impl Report {
    pub fn new(subject: &str) -> Self {
        Report { subject: subject.into(), checks: vec![] }
    }

    pub fn push(&mut self, check: CheckReport) {
        self.checks.push(check);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckReport> {
        self.checks.iter().find(|c| !c.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "checks for {}:", self.subject)?;
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            let mode = match &c.mode {
                CheckMode::Exhaustive { checks } => format!("exhaustive, {checks} checks"),
                CheckMode::Sampled { seed, samples } => {
                    format!("sampled, {samples} samples, seed {seed}")
                }
            };
            write!(f, "  [{status}] {} ({mode})", c.name)?;
            if let Some(w) = &c.witness {
                write!(f, " witness: {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
